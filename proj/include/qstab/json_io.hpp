#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qstab/torsion.hpp"
#include "qstab/wallchamber.hpp"

namespace qstab {

// Key order is part of the output contract, so every document uses the
// order-preserving json type. Rationals are serialized as "p/q" strings.
using Json = nlohmann::ordered_json;

Json json_rat(const Rat& r);
Json json_phase(const PhaseValue& p);
Json json_dims(const DimVec& d);
Json json_rats(const std::vector<Rat>& v);

Json json_module_set(const ModuleUniverse& U, const ModuleSet& s);

// {"phases": [...], "classes": [[names], ...]}
Json json_chain(const ModuleUniverse& U, const std::vector<ChainEntry>& chain);

// {"phases": ..., "classes": ..., "mgs": bool, "certificates": [...]}
Json json_mgs(const ModuleUniverse& U, const MGSReport& report);

Json json_walls(const ModuleUniverse& U, const std::vector<Wall>& walls);
Json json_chambers(const std::vector<Chamber>& chambers);

// {"valid": ..., "phases": {...}, "crossings": [...], "violations": ...}
Json json_path_report(const ModuleUniverse& U, const PathReport& report);

Json json_error(const Error& e);

// Two space indent plus trailing newline; byte stable across runs.
std::string dump_json(const Json& j);

} // namespace qstab
