#include "qstab/rep.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace qstab {

int total_of(const DimVec& d) { return std::accumulate(d.begin(), d.end(), 0); }

bool dim_leq(const DimVec& a, const DimVec& b) {
    if (a.size() != b.size()) throw InternalAssertion("dimension vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Representation::Representation(std::shared_ptr<const AlgebraSpec> alg, DimVec dims,
                               std::vector<FpMat> mats)
    : alg_(std::move(alg)), dims_(std::move(dims)), mats_(std::move(mats)) {
    if (!alg_) throw InternalAssertion("representation without algebra");
    if (static_cast<int>(dims_.size()) != alg_->vertex_count)
        throw ValidationError("dimension vector length does not match vertex count");
    if (mats_.size() != alg_->arrows.size())
        throw ValidationError("matrix count does not match arrow count");
}

Representation Representation::zero(std::shared_ptr<const AlgebraSpec> alg) {
    DimVec dims(alg->vertex_count, 0);
    std::vector<FpMat> mats;
    for (const Arrow& a : alg->arrows) {
        (void)a;
        mats.push_back(FpMat(alg->p, 0, 0));
    }
    return Representation(std::move(alg), std::move(dims), std::move(mats));
}

int Representation::total_dim() const { return total_of(dims_); }

std::string Representation::encode() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i) os << ",";
        os << dims_[i];
    }
    for (const FpMat& m : mats_) os << "|" << m.encode();
    return os.str();
}

FpMat evaluate_path(const Representation& M, const std::vector<int>& arrows) {
    if (arrows.empty()) throw InternalAssertion("empty path");
    FpMat acc = M.mat(arrows[0]);
    for (std::size_t j = 1; j < arrows.size(); ++j) acc = M.mat(arrows[j]).mul(acc);
    return acc;
}

void validate_representation(const Representation& M) {
    const AlgebraSpec& alg = M.algebra();
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        const FpMat& m = M.mat(static_cast<int>(a));
        if (m.rows() != static_cast<std::size_t>(M.dims()[alg.arrows[a].target]) ||
            m.cols() != static_cast<std::size_t>(M.dims()[alg.arrows[a].source]))
            throw ValidationError("matrix for arrow '" + alg.arrows[a].name +
                                  "' has the wrong shape");
        if (m.p() != alg.p) throw ValidationError("matrix field does not match algebra field");
    }
    for (const Relation& rel : alg.relations) {
        int rows = M.dims()[rel.target], cols = M.dims()[rel.source];
        FpMat sum(alg.p, rows, cols);
        for (const RelationTerm& t : rel.terms) {
            if (t.coeff == 0) continue;
            sum = sum.add(evaluate_path(M, t.arrows).scale(t.coeff));
        }
        if (!sum.is_zero()) throw ValidationError("representation does not satisfy a relation");
    }
}

DimVec SubmoduleEmbedding::sub_dims() const {
    DimVec d;
    for (const FpMat& b : basis) d.push_back(static_cast<int>(b.cols()));
    return d;
}

int SubmoduleEmbedding::total_dim() const { return total_of(sub_dims()); }

std::string SubmoduleEmbedding::encode() const {
    std::string s;
    for (const FpMat& b : basis) s += b.encode() + ";";
    return s;
}

bool Morphism::is_zero() const {
    for (const FpMat& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

bool Morphism::is_iso() const {
    for (const FpMat& b : blocks) {
        if (b.rows() != b.cols()) return false;
        if (b.rank() != b.rows()) return false;
    }
    return true;
}

void validate_morphism(const Morphism& f) {
    const AlgebraSpec& alg = f.source.algebra();
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        int s = alg.arrows[a].source, t = alg.arrows[a].target;
        FpMat lhs = f.blocks[t].mul(f.source.mat(static_cast<int>(a)));
        FpMat rhs = f.target.mat(static_cast<int>(a)).mul(f.blocks[s]);
        if (lhs != rhs)
            throw ValidationError("morphism does not intertwine arrow '" + alg.arrows[a].name + "'");
    }
}

bool is_arrow_stable(const Representation& M, const SubmoduleEmbedding& L) {
    const AlgebraSpec& alg = M.algebra();
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        int s = alg.arrows[a].source, t = alg.arrows[a].target;
        FpMat image = M.mat(static_cast<int>(a)).mul(L.basis[s]);
        if (!L.basis[t].columns_in_span(image)) return false;
    }
    return true;
}

std::vector<SubmoduleEmbedding> enumerate_submodules(const Representation& M,
                                                     const Limits& lim) {
    if (M.total_dim() > lim.max_total_dim)
        throw BoundExceeded("total dimension " + std::to_string(M.total_dim()) +
                            " exceeds the submodule enumeration cap " +
                            std::to_string(lim.max_total_dim));
    int n = static_cast<int>(M.dims().size());
    std::vector<const std::vector<FpMat>*> choices(n);
    for (int v = 0; v < n; ++v) choices[v] = &all_subspaces(M.algebra().p, M.dims()[v]);

    std::vector<SubmoduleEmbedding> out;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        SubmoduleEmbedding L;
        for (int v = 0; v < n; ++v) L.basis.push_back((*choices[v])[idx[v]]);
        if (is_arrow_stable(M, L)) out.push_back(std::move(L));
        int v = n - 1;
        while (v >= 0 && ++idx[v] == choices[v]->size()) idx[v--] = 0;
        if (v < 0) break;
    }
    std::sort(out.begin(), out.end(), [](const SubmoduleEmbedding& x, const SubmoduleEmbedding& y) {
        int tx = x.total_dim(), ty = y.total_dim();
        if (tx != ty) return tx < ty;
        DimVec dx = x.sub_dims(), dy = y.sub_dims();
        if (dx != dy) return dx < dy;
        return x.encode() < y.encode();
    });
    return out;
}

Representation sub_rep(const Representation& M, const SubmoduleEmbedding& L) {
    if (!is_arrow_stable(M, L)) throw InvalidEmbedding("subspace tuple is not arrow-stable");
    const AlgebraSpec& alg = M.algebra();
    std::vector<FpMat> mats;
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        int s = alg.arrows[a].source, t = alg.arrows[a].target;
        FpMat image = M.mat(static_cast<int>(a)).mul(L.basis[s]);
        FpMat x(alg.p, 0, 0);
        if (!L.basis[t].solve_columns(image, &x))
            throw InternalAssertion("stable subspace image left its target span");
        mats.push_back(std::move(x));
    }
    DimVec d = L.sub_dims();
    return Representation(M.algebra_ptr(), std::move(d), std::move(mats));
}

Morphism inclusion_of(const Representation& M, const SubmoduleEmbedding& L) {
    Morphism f{sub_rep(M, L), M, {}};
    f.blocks = L.basis;
    return f;
}

std::pair<Representation, Morphism> quotient_by(const Representation& M,
                                                const SubmoduleEmbedding& L) {
    if (!is_arrow_stable(M, L)) throw InvalidEmbedding("subspace tuple is not arrow-stable");
    const AlgebraSpec& alg = M.algebra();
    int n = alg.vertex_count;
    std::vector<FpMat> full(n, FpMat(alg.p, 0, 0)), full_inv(n, FpMat(alg.p, 0, 0));
    DimVec qdims(n);
    for (int v = 0; v < n; ++v) {
        int d = M.dims()[v], k = static_cast<int>(L.basis[v].cols());
        qdims[v] = d - k;
        // Extend the subspace basis to a full basis by standard vectors.
        FpMat C = L.basis[v];
        for (int i = 0; i < d && static_cast<int>(C.cols()) < d; ++i) {
            FpMat e(alg.p, static_cast<std::size_t>(d), 1);
            e.set(static_cast<std::size_t>(i), 0, 1);
            FpMat cand = C.hstack(e);
            if (cand.rank() == cand.cols()) C = std::move(cand);
        }
        if (static_cast<int>(C.cols()) != d)
            throw InternalAssertion("failed to extend a subspace basis");
        full[v] = C;
        full_inv[v] = C.inverse();
    }
    std::vector<FpMat> qmats;
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        int s = alg.arrows[a].source, t = alg.arrows[a].target;
        int ks = static_cast<int>(L.basis[s].cols()), kt = static_cast<int>(L.basis[t].cols());
        FpMat conj = full_inv[t].mul(M.mat(static_cast<int>(a)).mul(full[s]));
        FpMat q(alg.p, static_cast<std::size_t>(qdims[t]), static_cast<std::size_t>(qdims[s]));
        for (int i = 0; i < qdims[t]; ++i)
            for (int j = 0; j < qdims[s]; ++j)
                q.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                      conj.at(static_cast<std::size_t>(kt + i), static_cast<std::size_t>(ks + j)));
        // Stability of L means the lower-left block vanishes.
        for (int i = 0; i < qdims[t]; ++i)
            for (int j = 0; j < ks; ++j)
                if (conj.at(static_cast<std::size_t>(kt + i), static_cast<std::size_t>(j)) != 0)
                    throw InternalAssertion("quotient construction saw a nonzero corner block");
        qmats.push_back(std::move(q));
    }
    Representation Q(M.algebra_ptr(), qdims, std::move(qmats));
    Morphism proj{M, Q, {}};
    for (int v = 0; v < n; ++v) {
        int d = M.dims()[v], k = static_cast<int>(L.basis[v].cols());
        FpMat p(alg.p, static_cast<std::size_t>(qdims[v]), static_cast<std::size_t>(d));
        for (int i = 0; i < qdims[v]; ++i)
            for (int j = 0; j < d; ++j)
                p.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                      full_inv[v].at(static_cast<std::size_t>(k + i), static_cast<std::size_t>(j)));
        proj.blocks.push_back(std::move(p));
    }
    return {Q, proj};
}

std::vector<Morphism> hom_basis(const Representation& M, const Representation& N) {
    const AlgebraSpec& alg = M.algebra();
    int n = alg.vertex_count;
    std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v)
        offset[static_cast<std::size_t>(v) + 1] =
            offset[static_cast<std::size_t>(v)] +
            static_cast<std::size_t>(N.dims()[v]) * static_cast<std::size_t>(M.dims()[v]);
    std::size_t vars = offset[static_cast<std::size_t>(n)];

    std::vector<std::vector<uint32_t>> rows;
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        int s = alg.arrows[a].source, t = alg.arrows[a].target;
        const FpMat& Ma = M.mat(static_cast<int>(a));
        const FpMat& Na = N.mat(static_cast<int>(a));
        // (f_t Ma - Na f_s)[i][j] = 0 for i < N.dims[t], j < M.dims[s].
        for (int i = 0; i < N.dims()[t]; ++i)
            for (int j = 0; j < M.dims()[s]; ++j) {
                std::vector<uint32_t> row(vars, 0);
                for (int k = 0; k < M.dims()[t]; ++k) {
                    std::size_t var = offset[static_cast<std::size_t>(t)] +
                                      static_cast<std::size_t>(i) *
                                          static_cast<std::size_t>(M.dims()[t]) +
                                      static_cast<std::size_t>(k);
                    row[var] = (row[var] + Ma.at(static_cast<std::size_t>(k),
                                                 static_cast<std::size_t>(j))) % alg.p;
                }
                for (int l = 0; l < N.dims()[s]; ++l) {
                    std::size_t var = offset[static_cast<std::size_t>(s)] +
                                      static_cast<std::size_t>(l) *
                                          static_cast<std::size_t>(M.dims()[s]) +
                                      static_cast<std::size_t>(j);
                    uint32_t c = Na.at(static_cast<std::size_t>(i), static_cast<std::size_t>(l));
                    row[var] = (row[var] + alg.p - c) % alg.p;
                }
                rows.push_back(std::move(row));
            }
    }
    FpMat system = rows.empty() ? FpMat(alg.p, 0, vars) : FpMat::from_rows(alg.p, rows);
    FpMat kernel = system.kernel_basis();

    std::vector<Morphism> basis;
    for (std::size_t c = 0; c < kernel.cols(); ++c) {
        Morphism f{M, N, {}};
        for (int v = 0; v < n; ++v) {
            FpMat b(alg.p, static_cast<std::size_t>(N.dims()[v]),
                    static_cast<std::size_t>(M.dims()[v]));
            for (int i = 0; i < N.dims()[v]; ++i)
                for (int j = 0; j < M.dims()[v]; ++j)
                    b.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                          kernel.at(offset[static_cast<std::size_t>(v)] +
                                        static_cast<std::size_t>(i) *
                                            static_cast<std::size_t>(M.dims()[v]) +
                                        static_cast<std::size_t>(j),
                                    c));
            f.blocks.push_back(std::move(b));
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

namespace {

// Runs fn on every nonzero coefficient vector in F_p^k until fn returns
// true; returns whether fn ever did.
bool for_each_combination(uint32_t p, std::size_t k, long long cap, const char* what,
                          const std::function<bool(const std::vector<uint32_t>&)>& fn) {
    double combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= p;
    if (combos > static_cast<double>(cap))
        throw SearchSpaceExceeded(std::string(what) + " would enumerate more than " +
                                  std::to_string(cap) + " combinations");
    std::vector<uint32_t> c(k, 0);
    while (true) {
        std::size_t i = 0;
        while (i < k && ++c[i] == p) c[i++] = 0;
        if (i == k) return false;
        if (fn(c)) return true;
    }
}

std::vector<FpMat> combine(const std::vector<Morphism>& basis, const std::vector<uint32_t>& coeff,
                           const Representation& M, const Representation& N) {
    uint32_t p = M.algebra().p;
    std::vector<FpMat> blocks;
    for (int v = 0; v < M.algebra().vertex_count; ++v)
        blocks.push_back(FpMat(p, static_cast<std::size_t>(N.dims()[v]),
                               static_cast<std::size_t>(M.dims()[v])));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coeff[i] == 0) continue;
        for (std::size_t v = 0; v < blocks.size(); ++v)
            blocks[v] = blocks[v].add(basis[i].blocks[v].scale(coeff[i]));
    }
    return blocks;
}

} // namespace

bool is_isomorphic(const Representation& M, const Representation& N, const Limits& lim) {
    if (M.algebra_ptr().get() != N.algebra_ptr().get() &&
        algebra_to_text(M.algebra()) != algebra_to_text(N.algebra()))
        throw ValidationError("isomorphism test across different algebras");
    if (M.dims() != N.dims()) return false;
    if (M.total_dim() == 0) return true;
    if (M.encode() == N.encode()) return true;
    std::vector<Morphism> basis = hom_basis(M, N);
    if (basis.empty()) return false;
    return for_each_combination(
        M.algebra().p, basis.size(), lim.max_hom_enum, "isomorphism search",
        [&](const std::vector<uint32_t>& coeff) {
            std::vector<FpMat> blocks = combine(basis, coeff, M, N);
            for (const FpMat& b : blocks)
                if (b.rank() != b.rows()) return false;
            return true;
        });
}

bool is_indecomposable(const Representation& M, const Limits& lim) {
    if (M.is_zero()) return false;
    if (M.total_dim() == 1) return true;
    std::vector<Morphism> endos = hom_basis(M, M);
    bool found = for_each_combination(
        M.algebra().p, endos.size(), lim.max_hom_enum, "idempotent search",
        [&](const std::vector<uint32_t>& coeff) {
            std::vector<FpMat> e = combine(endos, coeff, M, M);
            bool zero = true, ident = true;
            for (std::size_t v = 0; v < e.size(); ++v) {
                if (!e[v].is_zero()) zero = false;
                if (e[v] != FpMat::identity(M.algebra().p, e[v].rows())) ident = false;
            }
            if (zero || ident) return false;
            for (std::size_t v = 0; v < e.size(); ++v)
                if (e[v].mul(e[v]) != e[v]) return false;
            return true;
        });
    return !found;
}

std::vector<Representation> decompose(const Representation& M, const Limits& lim) {
    if (M.is_zero()) return {};
    std::vector<SubmoduleEmbedding> subs = enumerate_submodules(M, lim);
    for (const SubmoduleEmbedding& L : subs) {
        int t = L.total_dim();
        if (t == 0 || t == M.total_dim()) continue;
        Representation Lr = sub_rep(M, L);
        Representation Q = quotient_by(M, L).first;
        if (is_isomorphic(M, direct_sum(Lr, Q), lim)) {
            std::vector<Representation> out = decompose(Lr, lim);
            std::vector<Representation> rest = decompose(Q, lim);
            out.insert(out.end(), rest.begin(), rest.end());
            return out;
        }
    }
    return {M};
}

Representation direct_sum(const Representation& A, const Representation& B) {
    const AlgebraSpec& alg = A.algebra();
    DimVec dims(alg.vertex_count);
    for (int v = 0; v < alg.vertex_count; ++v) dims[v] = A.dims()[v] + B.dims()[v];
    std::vector<FpMat> mats;
    for (std::size_t a = 0; a < alg.arrows.size(); ++a) {
        int s = alg.arrows[a].source, t = alg.arrows[a].target;
        FpMat m(alg.p, static_cast<std::size_t>(dims[t]), static_cast<std::size_t>(dims[s]));
        const FpMat& ma = A.mat(static_cast<int>(a));
        const FpMat& mb = B.mat(static_cast<int>(a));
        for (std::size_t i = 0; i < ma.rows(); ++i)
            for (std::size_t j = 0; j < ma.cols(); ++j) m.set(i, j, ma.at(i, j));
        for (std::size_t i = 0; i < mb.rows(); ++i)
            for (std::size_t j = 0; j < mb.cols(); ++j)
                m.set(ma.rows() + i, ma.cols() + j, mb.at(i, j));
        mats.push_back(std::move(m));
    }
    return Representation(A.algebra_ptr(), std::move(dims), std::move(mats));
}

Representation direct_sum(const std::shared_ptr<const AlgebraSpec>& alg,
                          const std::vector<Representation>& parts) {
    Representation acc = Representation::zero(alg);
    for (const Representation& p : parts) acc = direct_sum(acc, p);
    return acc;
}

namespace {

// All matrices of the given shape, swept entry by entry.
class MatrixOdometer {
public:
    MatrixOdometer(uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), current_(p, rows, cols) {}
    const FpMat& current() const { return current_; }
    bool advance() {
        for (std::size_t i = 0; i < current_.rows(); ++i)
            for (std::size_t j = 0; j < current_.cols(); ++j) {
                uint32_t v = current_.at(i, j);
                if (v + 1 < p_) {
                    current_.set(i, j, v + 1);
                    return true;
                }
                current_.set(i, j, 0);
            }
        return false;
    }
    double count() const {
        double c = 1;
        for (std::size_t i = 0; i < current_.rows() * current_.cols(); ++i) c *= p_;
        return c;
    }

private:
    uint32_t p_;
    FpMat current_;
};

bool satisfies_relations(const Representation& M) {
    for (const Relation& rel : M.algebra().relations) {
        int rows = M.dims()[rel.target], cols = M.dims()[rel.source];
        FpMat sum(M.algebra().p, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
        for (const RelationTerm& t : rel.terms) {
            if (t.coeff == 0) continue;
            sum = sum.add(evaluate_path(M, t.arrows).scale(t.coeff));
        }
        if (!sum.is_zero()) return false;
    }
    return true;
}

std::vector<DimVec> dim_vectors_upto(const DimVec& bound) {
    std::vector<DimVec> out;
    DimVec d(bound.size(), 0);
    while (true) {
        std::size_t v = 0;
        while (v < d.size() && ++d[v] > bound[v]) d[v++] = 0;
        if (v == d.size()) break;
        out.push_back(d);
    }
    std::sort(out.begin(), out.end(), [](const DimVec& a, const DimVec& b) {
        int ta = total_of(a), tb = total_of(b);
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return out;
}

} // namespace

std::vector<Representation> enumerate_indecomposables_brute(
    const std::shared_ptr<const AlgebraSpec>& alg, const DimVec& bound, const Limits& lim) {
    if (static_cast<int>(bound.size()) != alg->vertex_count)
        throw ValidationError("bound length does not match vertex count");
    for (int b : bound)
        if (b < 0) throw ValidationError("bound entries must be nonnegative");
    if (total_of(bound) > lim.max_total_dim)
        throw BoundExceeded("bound total " + std::to_string(total_of(bound)) +
                            " exceeds the enumeration cap " + std::to_string(lim.max_total_dim));

    std::vector<Representation> found;
    for (const DimVec& dims : dim_vectors_upto(bound)) {
        int pivot = -1;
        for (std::size_t a = 0; a < alg->arrows.size(); ++a) {
            const Arrow& ar = alg->arrows[a];
            if (ar.source != ar.target && dims[ar.source] > 0 && dims[ar.target] > 0) {
                pivot = static_cast<int>(a);
                break;
            }
        }
        std::vector<FpMat> pivot_forms;
        if (pivot >= 0) {
            int dt = dims[alg->arrows[pivot].target], ds = dims[alg->arrows[pivot].source];
            for (int r = 0; r <= std::min(dt, ds); ++r) {
                FpMat f(alg->p, static_cast<std::size_t>(dt), static_cast<std::size_t>(ds));
                for (int i = 0; i < r; ++i)
                    f.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), 1);
                pivot_forms.push_back(std::move(f));
            }
        }

        std::vector<MatrixOdometer> free;
        double combos = pivot >= 0 ? static_cast<double>(pivot_forms.size()) : 1;
        for (std::size_t a = 0; a < alg->arrows.size(); ++a) {
            if (static_cast<int>(a) == pivot) continue;
            free.emplace_back(alg->p, static_cast<std::size_t>(dims[alg->arrows[a].target]),
                              static_cast<std::size_t>(dims[alg->arrows[a].source]));
            combos *= free.back().count();
        }
        if (combos > static_cast<double>(lim.max_hom_enum))
            throw SearchSpaceExceeded("matrix enumeration at dimension vector total " +
                                      std::to_string(total_of(dims)) + " is too large");

        std::size_t pi = 0;
        while (true) {
            std::vector<FpMat> mats;
            std::size_t fi = 0;
            for (std::size_t a = 0; a < alg->arrows.size(); ++a) {
                if (static_cast<int>(a) == pivot)
                    mats.push_back(pivot_forms[pi]);
                else
                    mats.push_back(free[fi++].current());
            }
            Representation M(alg, dims, std::move(mats));
            if (satisfies_relations(M) && is_indecomposable(M, lim)) {
                bool fresh = true;
                for (const Representation& seen : found)
                    if (seen.dims() == dims && is_isomorphic(seen, M, lim)) {
                        fresh = false;
                        break;
                    }
                if (fresh) found.push_back(std::move(M));
            }
            // Advance: free matrices first, then the pivot normal form.
            std::size_t k = 0;
            while (k < free.size() && !free[k].advance()) ++k;
            if (k < free.size()) continue;
            if (pivot >= 0 && ++pi < pivot_forms.size()) continue;
            break;
        }
    }
    return found;
}

} // namespace qstab
