#pragma once

#include <string>

#include "qstab/wallchamber.hpp"

namespace qstab {

// Rank-2 stability picture: walls as lines or rays through the origin,
// chambers lightly shaded, optional path polyline with labeled crossing
// markers. The square [-2,2]^2 maps onto a 400x400 viewBox; coordinates
// are printed with six decimal places. RankUnsupported off rank 2.
std::string render_svg(const ModuleUniverse& U, const RedPath* path);

} // namespace qstab
