#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qstab/redpath.hpp"
#include "qstab/stability.hpp"
#include "qstab/torsion.hpp"

namespace qstab {

// D(M) = {theta : <theta,[M]> = 0 and <theta,[L]> <= 0 for every
// subobject class L of M}.
struct Cone {
    int ambient = 0;
    DimVec equality;
    std::vector<DimVec> inequalities; // distinct proper subobject classes
};

Cone stability_space(const ModuleUniverse& U, int class_id);

bool cone_contains(const Cone& cone, const std::vector<Rat>& theta);

// Whether the cone spans a wall: some theta pairs to zero with the
// equality class and strictly negatively with every inequality class not
// proportional to it. Rank 1 to 3; RankUnsupported beyond.
bool is_wall(const Cone& cone, std::vector<Rat>* witness = nullptr);

struct Wall {
    Cone cone;                  // representative cone
    std::vector<int> class_ids; // indecomposable classes sharing the geometry
};

// Primitive integer directions spanning a rank-2 cone, in angular order:
// empty for the origin, one for a ray, two for a line.
std::vector<std::pair<long long, long long>> wall_rays_rank2(const Cone& cone);

// Walls among the stability spaces of indecomposable classes, grouped by
// geometry (direct sums only shrink cones, so indecomposables suffice).
std::vector<Wall> enumerate_walls(const ModuleUniverse& U);

struct Chamber {
    std::vector<Rat> from_ray, to_ray; // bounding rays, counterclockwise
    std::vector<Rat> sample;           // interior point
};

// Connected components of the plane minus all stability spaces of
// positive dimension. Rank 2 only.
std::vector<Chamber> chambers_rank2(const ModuleUniverse& U);

struct Crossing {
    Rat t;
    std::vector<int> class_ids; // classes whose pairing vanishes at t
};

struct PathReport {
    bool valid = false;
    std::vector<std::string> violations;
    std::vector<Crossing> crossings;
    bool dgeneric = false;
    std::vector<std::string> dgeneric_notes;
};

// Checks the path shape, the one-crossing-per-class rule, the sign
// pattern around each crossing, and the genericity conditions (endpoints
// inside chambers; simultaneous wall points only for proportional
// classes; the segment through each crossing is not level).
PathReport validate_red_path(const ModuleUniverse& U, const RedPath& path);

// {M : <theta,[N]> >= 0 for every quotient N of M}.
ModuleSet bridgeland_torsion(const ModuleUniverse& U, const std::vector<Rat>& theta);

// The torsion class of the path function at phase t equals the
// Bridgeland torsion class at gamma(t).
bool verify_redtorsion(const StabilityFunction& path_sf, const ModuleUniverse& U,
                       const Rat& t, std::string* why = nullptr);

} // namespace qstab
