#pragma once

#include <string>
#include <vector>

#include "qstab/stability.hpp"

namespace qstab {

// Set of indecomposable classes of a universe (sorted ids). A module
// belongs to the subcategory the set denotes when all of its
// indecomposable summands do; the zero module always belongs.
struct ModuleSet {
    std::vector<int> ids;

    bool contains(int id) const;
    bool operator==(const ModuleSet& o) const { return ids == o.ids; }
    bool operator!=(const ModuleSet& o) const { return ids != o.ids; }
    // Strict inclusion.
    bool proper_subset_of(const ModuleSet& o) const;
};

// T_p = {M : every nonzero quotient of M has phase >= p}.
ModuleSet torsion_class_at(const StabilityFunction& sf, const ModuleUniverse& U,
                           const PhaseValue& p);

// F_p = {M : every nonzero subobject of M has phase < p}.
ModuleSet torsion_free_at(const StabilityFunction& sf, const ModuleUniverse& U,
                          const PhaseValue& p);

// Same sets through the extremal destabilizers: phase of the minimal
// destabilizing quotient >= p (resp. maximal destabilizing subobject < p).
ModuleSet torsion_class_via_mdq(const StabilityFunction& sf, const ModuleUniverse& U,
                                const PhaseValue& p);
ModuleSet torsion_free_via_mds(const StabilityFunction& sf, const ModuleUniverse& U,
                               const PhaseValue& p);

// Filt(A_{>=p}) and Filt(Fac A_{>=p}) where A_{>=p} is the set of
// semistable classes of phase >= p.
ModuleSet torsion_class_via_filt(const StabilityFunction& sf, const ModuleUniverse& U,
                                 const PhaseValue& p, bool fac_first);

// Closure of a set of classes under iterated extensions: M is in when
// some proper (possibly zero) submodule L has M/L in the generating set
// and L already in the closure. Returns sorted class ids.
std::vector<int> filt_closure(const ModuleUniverse& U, const std::vector<int>& gen_classes);

// Closure under quotients.
std::vector<int> fac_closure(const ModuleUniverse& U, const std::vector<int>& gen_classes);

// Closed under quotients and extensions inside the universe.
bool is_torsion_class(const ModuleUniverse& U, const ModuleSet& T);

// Torsion pair verification: closures, Hom(T,F) = 0, mutual maximality,
// and the canonical sequence 0 -> tM -> M -> M/tM -> 0 for every class.
bool verify_torsion_pair(const ModuleUniverse& U, const ModuleSet& T, const ModuleSet& F,
                         std::string* why = nullptr);

// Every torsion class of the universe, by exhaustive subset search over
// indecomposables (SearchSpaceExceeded above Limits::max_oracle_indecs).
std::vector<ModuleSet> all_torsion_classes(const ModuleUniverse& U);

struct ChainEntry {
    PhaseValue phase; // highest phase producing this torsion class
    ModuleSet torsion;
};

// T_p swept from above the top attained phase down to below the bottom
// one, deduplicated; runs from the empty set to everything.
std::vector<ChainEntry> chain_of_torsion_classes(const StabilityFunction& sf,
                                                 const ModuleUniverse& U);

// At most one stable class at the given phase.
bool is_discrete_at(const StabilityFunction& sf, const ModuleUniverse& U,
                    const PhaseValue& p);
bool is_discrete(const StabilityFunction& sf, const ModuleUniverse& U);

struct MGSReport {
    bool mgs = false;
    std::vector<ChainEntry> chain;
    std::vector<std::string> certificates; // failure witnesses
};

// Maximal green sequence verdict: the chain is unrefinable, checked both
// by phase discreteness and against the exhaustive torsion class oracle;
// OracleDisagreement if the two routes differ.
MGSReport verify_mgs(const StabilityFunction& sf, const ModuleUniverse& U);

} // namespace qstab
