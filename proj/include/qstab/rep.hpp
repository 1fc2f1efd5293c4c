#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qstab/algebra.hpp"
#include "qstab/fp.hpp"

namespace qstab {

using DimVec = std::vector<int>;

int total_of(const DimVec& d);
bool dim_leq(const DimVec& a, const DimVec& b);

// Search caps. Exceeding max_total_dim raises BoundExceeded; blowing past
// max_hom_enum combinations in an isomorphism or idempotent search raises
// SearchSpaceExceeded. max_oracle_indecs caps the exhaustive torsion-class
// oracle.
struct Limits {
    int max_total_dim = 6;
    long long max_hom_enum = 1LL << 20;
    int max_oracle_indecs = 15;
};

class Representation {
public:
    Representation(std::shared_ptr<const AlgebraSpec> alg, DimVec dims,
                   std::vector<FpMat> mats);
    static Representation zero(std::shared_ptr<const AlgebraSpec> alg);

    const AlgebraSpec& algebra() const { return *alg_; }
    const std::shared_ptr<const AlgebraSpec>& algebra_ptr() const { return alg_; }
    const DimVec& dims() const { return dims_; }
    const FpMat& mat(int arrow) const { return mats_[arrow]; }
    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    std::string encode() const;

    bool operator==(const Representation& o) const { return encode() == o.encode(); }
    bool operator!=(const Representation& o) const { return !(*this == o); }

private:
    std::shared_ptr<const AlgebraSpec> alg_;
    DimVec dims_;
    std::vector<FpMat> mats_;
};

// M_{a_k} ... M_{a_1} for the path (a_1, ..., a_k) in application order.
FpMat evaluate_path(const Representation& M, const std::vector<int>& arrows);

// Shape and relation check; throws ValidationError.
void validate_representation(const Representation& M);

// Arrow-stable subspace tuple, one canonical column-echelon basis per
// vertex (shape d_v x k_v).
struct SubmoduleEmbedding {
    std::vector<FpMat> basis;
    DimVec sub_dims() const;
    int total_dim() const;
    std::string encode() const;
};

struct Morphism {
    Representation source;
    Representation target;
    std::vector<FpMat> blocks; // per vertex, dim_target x dim_source
    bool is_zero() const;
    bool is_iso() const;
};

void validate_morphism(const Morphism& f); // intertwining check

// All submodules of M, graded by total dimension then basis encoding.
// Includes the zero and full submodules.
std::vector<SubmoduleEmbedding> enumerate_submodules(const Representation& M,
                                                     const Limits& lim = {});

bool is_arrow_stable(const Representation& M, const SubmoduleEmbedding& L);

Representation sub_rep(const Representation& M, const SubmoduleEmbedding& L);
Morphism inclusion_of(const Representation& M, const SubmoduleEmbedding& L);

// Quotient representation together with the projection M -> M/L.
std::pair<Representation, Morphism> quotient_by(const Representation& M,
                                                const SubmoduleEmbedding& L);

std::vector<Morphism> hom_basis(const Representation& M, const Representation& N);

bool is_isomorphic(const Representation& M, const Representation& N,
                   const Limits& lim = {});

// No nontrivial idempotent endomorphism. The zero module is not
// indecomposable.
bool is_indecomposable(const Representation& M, const Limits& lim = {});

// Indecomposable summands, via direct-summand submodule splitting.
std::vector<Representation> decompose(const Representation& M, const Limits& lim = {});

Representation direct_sum(const Representation& A, const Representation& B);
Representation direct_sum(const std::shared_ptr<const AlgebraSpec>& alg,
                          const std::vector<Representation>& parts);

// One representative per isomorphism class of indecomposables with
// dimension vector componentwise <= bound, by exhaustive matrix
// enumeration. The first non-loop arrow with nonzero endpoints is
// restricted to rank normal forms; base change at its endpoints makes
// that exhaustive up to isomorphism.
std::vector<Representation> enumerate_indecomposables_brute(
    const std::shared_ptr<const AlgebraSpec>& alg, const DimVec& bound,
    const Limits& lim = {});

} // namespace qstab
