#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qstab/phase.hpp"
#include "qstab/redpath.hpp"
#include "qstab/rep.hpp"
#include "qstab/universe.hpp"

namespace qstab {

enum class Direction { Subobject, Quotient };
enum class KingVerdict { NotSemistable, Semistable, Stable };

// Phase assignment satisfying the see-saw property: in a short exact
// sequence the middle phase is strictly between the outer ones or all
// three agree.
class StabilityFunction {
public:
    enum class Kind { Charge, Slope, Table, Path };

    // phi = <a,m>/<b,m> with b strictly positive; strictly increasing in
    // the angle of the central charge -<a,m> + i<b,m>.
    static StabilityFunction linear_charge(std::vector<Rat> a, std::vector<Rat> b);

    // phi = <num,m>/<den,m>, +infinity where the denominator pairing
    // vanishes. den must be entrywise nonnegative and num positive
    // wherever den is zero.
    static StabilityFunction slope(std::vector<Rat> num, std::vector<Rat> den);

    // Explicit per-class phases over a universe. Validates the see-saw
    // property on every listed short exact sequence at construction;
    // sequences with an unlisted term are skipped and counted.
    static StabilityFunction table(std::shared_ptr<const ModuleUniverse> U,
                                   std::map<int, PhaseValue> phases);

    // phi(M) = the unique crossing time of <gamma(t),[M]> for a
    // piecewise linear path from (1,...,1) to (-1,...,-1). Validates
    // crossing uniqueness for every class of the universe.
    static StabilityFunction path_induced(std::shared_ptr<const ModuleUniverse> U,
                                          RedPath path);

    Kind kind() const { return kind_; }
    bool dims_only() const { return kind_ != Kind::Table; }

    PhaseValue phase(const Representation& M) const; // ZeroObject on zero
    PhaseValue phase_of_dims(const DimVec& m) const; // dims_only kinds
    PhaseValue phase_of_class(const ModuleUniverse& U, int class_id) const;

    // Universe the function was built over; null for charge and slope.
    const std::shared_ptr<const ModuleUniverse>& universe() const { return universe_; }
    // Table construction: sequences skipped for having an unlisted term.
    int skipped_seesaw() const { return skipped_seesaw_; }
    const RedPath& path() const;
    const std::vector<Rat>& charge_a() const { return a_; }
    const std::vector<Rat>& charge_b() const { return b_; }

    std::string describe() const;

private:
    StabilityFunction() = default;

    Kind kind_ = Kind::Slope;
    std::vector<Rat> a_, b_; // charge / slope data
    std::shared_ptr<const ModuleUniverse> universe_;
    std::map<int, PhaseValue> table_;
    std::optional<RedPath> path_;
    int skipped_seesaw_ = 0;
};

bool is_semistable(const StabilityFunction& sf, const Representation& M,
                   const Limits& lim = {});
bool is_stable(const StabilityFunction& sf, const Representation& M,
               const Limits& lim = {});

// Class-level semistability inside a universe; exact because a
// destabilizing subobject is detected by its isomorphism class.
bool class_semistable(const StabilityFunction& sf, const ModuleUniverse& U, int class_id);
bool class_stable(const StabilityFunction& sf, const ModuleUniverse& U, int class_id);

// Three-state verdict for <theta,->: pairing zero on M, negative
// (nonpositive for semistable) on proper nonzero subobjects.
KingVerdict king_semistable(const std::vector<Rat>& theta, const Representation& M,
                            const Limits& lim = {});

// Extremal subobject (maximal phase) or quotient (minimal phase), ties
// resolved by the factoring property: every competitor factors through
// the winner. The winner is semistable.
struct Destabilizer {
    Representation object;
    Morphism witness; // inclusion into M, or projection from M
    Direction direction = Direction::Subobject;
    PhaseValue phase;
};

Destabilizer extremal_destabilizer(const StabilityFunction& sf, const Representation& M,
                                   Direction dir, const Limits& lim = {});

// Harder-Narasimhan filtration 0 = M_0 < M_1 < ... < M_k = M with
// semistable factors of strictly decreasing phase. steps[i] embeds M_{i+1}
// in M coordinates; factors[i] = M_{i+1}/M_i.
struct HNFiltration {
    std::vector<SubmoduleEmbedding> steps;
    std::vector<Representation> factors;
    std::vector<PhaseValue> phases;
};

HNFiltration hn_filtration(const StabilityFunction& sf, const Representation& M,
                           const Limits& lim = {});

// Dual construction (peel minimal-phase quotients); same factors up to
// isomorphism, used as a cross-check.
std::vector<std::pair<Representation, PhaseValue>> hn_factors_by_quotients(
    const StabilityFunction& sf, const Representation& M, const Limits& lim = {});

// Stable factors of a semistable module (NotSemistable otherwise). Two
// independent selection orders must give the same multiset.
std::vector<Representation> stable_factors(const StabilityFunction& sf,
                                           const Representation& M,
                                           const Limits& lim = {});

// Class ids of the semistable classes of the given phase, sorted.
// Classes whose phase or whose subobject phases are not listed by a
// table function are skipped.
std::vector<int> wide_slice(const StabilityFunction& sf, const ModuleUniverse& U,
                            const PhaseValue& p);

// Stable classes of the given phase.
std::vector<int> stable_slice(const StabilityFunction& sf, const ModuleUniverse& U,
                              const PhaseValue& p);

// Phases attained by classes of the universe, strictly decreasing.
// Classes without a listed phase are skipped.
std::vector<PhaseValue> attained_phases(const StabilityFunction& sf,
                                        const ModuleUniverse& U);

} // namespace qstab
