#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qstab/errors.hpp"

namespace qstab {

// Vertices are 0-based internally; the file format uses 1-based indices.
struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

// A single coefficient*path summand. Arrow indices are listed in
// application order: {a, b} stands for the path "first a, then b", so on a
// representation it evaluates to M_b * M_a.
struct RelationTerm {
    uint32_t coeff = 1;
    std::vector<int> arrows;
};

struct Relation {
    std::vector<RelationTerm> terms;
    int source = 0;
    int target = 0;
};

struct AlgebraSpec {
    uint32_t p = 2;
    int vertex_count = 0;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    // Set when the spec came from the builtin catalog ("A2", "kronecker");
    // empty for user-supplied algebras.
    std::string builtin_id;

    int arrow_index(const std::string& name) const;
};

// Parses the algebra file format:
//   field p=2
//   vertices 2
//   arrow a 1 2
//   relation 1*a.b + 1*c.d
// '#' starts a comment. ParseError carries line/column positions;
// ValidationError names the violated invariant (non-prime p, dangling
// vertex, non-composable or too-short relation path, mixed endpoints).
AlgebraSpec parse_algebra(const std::string& text);

// Canonical document that parses back to an equal spec.
std::string algebra_to_text(const AlgebraSpec& alg);

} // namespace qstab
