#pragma once

#include <string>
#include <vector>

#include "qstab/errors.hpp"
#include "qstab/rational.hpp"
#include "qstab/rep.hpp"

namespace qstab {

// Piecewise linear path gamma : [0,1] -> R^n from (1,...,1) to
// (-1,...,-1), stored by its breakpoints.
struct RedPath {
    std::vector<Rat> times;
    std::vector<std::vector<Rat>> points;

    int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

// One breakpoint per line: "t x1 x2 ... xn", all rationals, '#' comments.
RedPath parse_red_path(const std::string& text);

// Structural checks: at least two breakpoints, strictly increasing times,
// t=0 at the all-ones point, t=1 at the all-minus-ones point, uniform
// coordinate count matching n. Throws InvalidPath.
void validate_red_path_shape(const RedPath& path, int n);

std::vector<Rat> path_eval(const RedPath& path, const Rat& t);

// Zero set of t -> <gamma(t), m> along the path.
struct PairingRoots {
    std::vector<Rat> zeros;
    bool has_interval_zero = false;
    Rat interval_begin = Rat(0);
    Rat interval_end = Rat(0);
};

PairingRoots pairing_roots(const RedPath& path, const DimVec& m);

// The unique zero, required to lie strictly between 0 and 1. Throws
// InvalidPath when the pairing has no zero, several, an interval of them,
// or one at an endpoint.
Rat crossing_time(const RedPath& path, const DimVec& m);

std::string red_path_to_text(const RedPath& path);

} // namespace qstab
