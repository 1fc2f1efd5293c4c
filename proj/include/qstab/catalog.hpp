#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qstab/stability.hpp"
#include "qstab/universe.hpp"

namespace qstab {

// Built-in quivers: "A2".."A8" (optionally "A3:rl" with an orientation
// word, r meaning i -> i+1) and "kronecker". UnknownBuiltin otherwise.
// p picks the coefficient field.
std::shared_ptr<const AlgebraSpec> builtin_algebra(const std::string& id, int p = 2);

// Interval modules of a type A quiver: one per pair 1 <= i <= j <= n,
// every arrow matrix identity or zero as forced.
std::vector<NamedRep> an_interval_modules(const std::shared_ptr<const AlgebraSpec>& alg);

// Closed-form Kronecker modules: P_n (n, n+1), I_n (n+1, n) for
// n <= max_n, and the regular line R_{lambda,1} for lambda in P^1(F_p)
// when max_n >= 1. max_n <= 3; BoundExceeded otherwise.
std::vector<NamedRep> kronecker_family(int max_n, int p);

// Monic irreducible polynomials over F_p up to the given degree,
// low-degree first; coefficient vectors are little endian including the
// leading 1.
std::vector<std::vector<int>> monic_irreducibles(int p, int max_degree);

// Indecomposables by matrix enumeration with generic names.
std::vector<NamedRep> brute_indecs(const std::shared_ptr<const AlgebraSpec>& alg,
                                   const DimVec& bound, const Limits& lim = {});

// Slope m1/m2 on two-vertex dimension vectors: on the Kronecker quiver
// the preprojectives sit below 1, the regulars at 1, the preinjectives
// above, with the simples at 0 and infinity.
StabilityFunction kronecker_slope();

// Table refinement of kronecker_slope over a Kronecker universe: the
// regular phase 1 splits in two, points named in `special` staying at 1
// and the rest dropping to the starred value immediately below.
// Point names are "0".."p-1", "inf", or the polynomial name of a higher
// degree point ("x2+x+1"); higher_degree_special picks the side for
// those. Decomposable classes are listed only where the see-saw
// property forces a value.
StabilityFunction starred_kronecker_table(std::shared_ptr<const ModuleUniverse> U,
                                          const std::set<std::string>& special,
                                          bool higher_degree_special);

} // namespace qstab
