#include "qstab/stability.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qstab {

namespace {

std::string join_rats(const std::vector<Rat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(v[i]);
    }
    return s;
}

} // namespace

StabilityFunction StabilityFunction::linear_charge(std::vector<Rat> a, std::vector<Rat> b) {
    if (a.size() != b.size()) throw ValidationError("charge vectors differ in length");
    for (const Rat& x : b)
        if (!(Rat(0) < x))
            throw ValidationError("charge denominator vector must be strictly positive");
    StabilityFunction sf;
    sf.kind_ = Kind::Charge;
    sf.a_ = std::move(a);
    sf.b_ = std::move(b);
    return sf;
}

StabilityFunction StabilityFunction::slope(std::vector<Rat> num, std::vector<Rat> den) {
    if (num.size() != den.size()) throw ValidationError("slope vectors differ in length");
    for (std::size_t i = 0; i < den.size(); ++i) {
        if (den[i] < Rat(0)) throw ValidationError("slope denominator entries must be nonnegative");
        if (den[i] == Rat(0) && !(Rat(0) < num[i]))
            throw ValidationError("slope numerator must be positive where the denominator vanishes");
    }
    StabilityFunction sf;
    sf.kind_ = Kind::Slope;
    sf.a_ = std::move(num);
    sf.b_ = std::move(den);
    return sf;
}

StabilityFunction StabilityFunction::table(std::shared_ptr<const ModuleUniverse> U,
                                           std::map<int, PhaseValue> phases) {
    if (!U) throw ValidationError("table stability function needs a universe");
    StabilityFunction sf;
    sf.kind_ = Kind::Table;
    sf.universe_ = std::move(U);
    sf.table_ = std::move(phases);
    // Trichotomy on every fully listed short exact sequence.
    for (const ModuleUniverse::SES& s : sf.universe_->ses_table()) {
        auto l = sf.table_.find(s.sub), m = sf.table_.find(s.mid), q = sf.table_.find(s.quot);
        if (l == sf.table_.end() || m == sf.table_.end() || q == sf.table_.end()) {
            ++sf.skipped_seesaw_;
            continue;
        }
        bool up = l->second < m->second && m->second < q->second;
        bool down = q->second < m->second && m->second < l->second;
        bool flat = l->second == m->second && m->second == q->second;
        if (!up && !down && !flat) {
            const ModuleUniverse& uni = *sf.universe_;
            throw SeesawViolation("sequence 0 -> " + uni.cls(s.sub).name + " -> " +
                                  uni.cls(s.mid).name + " -> " + uni.cls(s.quot).name +
                                  " -> 0 has phases " + phase_to_string(l->second) + ", " +
                                  phase_to_string(m->second) + ", " + phase_to_string(q->second));
        }
    }
    return sf;
}

StabilityFunction StabilityFunction::path_induced(std::shared_ptr<const ModuleUniverse> U,
                                                  RedPath path) {
    if (!U) throw ValidationError("path stability function needs a universe");
    validate_red_path_shape(path, U->algebra().vertex_count);
    for (int id = 0; id < U->class_count(); ++id)
        crossing_time(path, U->cls(id).dims); // throws InvalidPath on failure
    StabilityFunction sf;
    sf.kind_ = Kind::Path;
    sf.universe_ = std::move(U);
    sf.path_ = std::move(path);
    return sf;
}

const RedPath& StabilityFunction::path() const {
    if (!path_) throw InternalAssertion("not a path stability function");
    return *path_;
}

PhaseValue StabilityFunction::phase_of_dims(const DimVec& m) const {
    if (total_of(m) == 0) throw ZeroObject("the zero module has no phase");
    switch (kind_) {
        case Kind::Charge:
            return PhaseValue::finite(dot(a_, m) / dot(b_, m));
        case Kind::Slope: {
            Rat dn = dot(b_, m);
            if (dn == Rat(0)) return PhaseValue::infinity();
            return PhaseValue::finite(dot(a_, m) / dn);
        }
        case Kind::Path:
            return PhaseValue::finite(crossing_time(*path_, m));
        case Kind::Table:
            throw InternalAssertion("table phases are per class, not per dimension vector");
    }
    throw InternalAssertion("unreachable");
}

PhaseValue StabilityFunction::phase(const Representation& M) const {
    if (M.is_zero()) throw ZeroObject("the zero module has no phase");
    if (kind_ != Kind::Table) return phase_of_dims(M.dims());
    int id = universe_->classify(M);
    auto it = table_.find(id);
    if (it == table_.end())
        throw OutOfUniverse("no phase listed for class " + universe_->cls(id).name);
    return it->second;
}

PhaseValue StabilityFunction::phase_of_class(const ModuleUniverse& U, int class_id) const {
    if (kind_ != Kind::Table) return phase_of_dims(U.cls(class_id).dims);
    if (universe_.get() != &U)
        throw ValidationError("table stability function used with a different universe");
    auto it = table_.find(class_id);
    if (it == table_.end())
        throw OutOfUniverse("no phase listed for class " + U.cls(class_id).name);
    return it->second;
}

std::string StabilityFunction::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Charge:
            os << "charge a=" << join_rats(a_) << " b=" << join_rats(b_);
            break;
        case Kind::Slope:
            os << "slope num=" << join_rats(a_) << " den=" << join_rats(b_);
            break;
        case Kind::Table:
            os << "table with " << table_.size() << " listed classes";
            break;
        case Kind::Path:
            os << "path with " << path_->times.size() << " breakpoints";
            break;
    }
    return os.str();
}

bool is_semistable(const StabilityFunction& sf, const Representation& M, const Limits& lim) {
    PhaseValue pm = sf.phase(M);
    for (const SubmoduleEmbedding& L : enumerate_submodules(M, lim)) {
        int t = L.total_dim();
        if (t == 0 || t == M.total_dim()) continue;
        if (sf.phase(sub_rep(M, L)) > pm) return false;
    }
    return true;
}

bool is_stable(const StabilityFunction& sf, const Representation& M, const Limits& lim) {
    PhaseValue pm = sf.phase(M);
    for (const SubmoduleEmbedding& L : enumerate_submodules(M, lim)) {
        int t = L.total_dim();
        if (t == 0 || t == M.total_dim()) continue;
        if (sf.phase(sub_rep(M, L)) >= pm) return false;
    }
    return true;
}

bool class_semistable(const StabilityFunction& sf, const ModuleUniverse& U, int class_id) {
    PhaseValue pm = sf.phase_of_class(U, class_id);
    for (int s : U.sub_class_ids(class_id)) {
        if (s == class_id) continue;
        if (sf.phase_of_class(U, s) > pm) return false;
    }
    return true;
}

bool class_stable(const StabilityFunction& sf, const ModuleUniverse& U, int class_id) {
    PhaseValue pm = sf.phase_of_class(U, class_id);
    for (int s : U.sub_class_ids(class_id)) {
        if (s == class_id) continue;
        if (sf.phase_of_class(U, s) >= pm) return false;
    }
    return true;
}

KingVerdict king_semistable(const std::vector<Rat>& theta, const Representation& M,
                            const Limits& lim) {
    if (M.is_zero()) throw ZeroObject("the zero module has no King verdict");
    if (static_cast<int>(theta.size()) != M.algebra().vertex_count)
        throw ValidationError("theta length does not match vertex count");
    if (dot(theta, M.dims()) != Rat(0)) return KingVerdict::NotSemistable;
    bool strict = true;
    for (const SubmoduleEmbedding& L : enumerate_submodules(M, lim)) {
        int t = L.total_dim();
        if (t == 0 || t == M.total_dim()) continue;
        Rat v = dot(theta, L.sub_dims());
        if (Rat(0) < v) return KingVerdict::NotSemistable;
        if (v == Rat(0)) strict = false;
    }
    return strict ? KingVerdict::Stable : KingVerdict::Semistable;
}

namespace {

FpMat intersect_subspaces(const FpMat& A, const FpMat& B) {
    // Columns A x with A x = B y, found from the kernel of [A | -B].
    if (A.cols() == 0 || B.cols() == 0) return FpMat(A.p(), A.rows(), 0);
    FpMat combined = A.hstack(B.scale(A.p() - 1));
    FpMat ker = combined.kernel_basis();
    FpMat xpart(A.p(), A.cols(), ker.cols());
    for (std::size_t i = 0; i < A.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) xpart.set(i, j, ker.at(i, j));
    return A.mul(xpart).column_span_canonical();
}

SubmoduleEmbedding kernel_of_blocks(const std::vector<FpMat>& blocks) {
    SubmoduleEmbedding K;
    for (const FpMat& b : blocks) K.basis.push_back(b.kernel_basis().column_span_canonical());
    return K;
}

} // namespace

Destabilizer extremal_destabilizer(const StabilityFunction& sf, const Representation& M,
                                   Direction dir, const Limits& lim) {
    if (M.is_zero()) throw ZeroObject("the zero module has no extremal destabilizer");
    std::vector<SubmoduleEmbedding> subs = enumerate_submodules(M, lim);

    if (dir == Direction::Subobject) {
        std::vector<std::pair<SubmoduleEmbedding, PhaseValue>> cands;
        for (const SubmoduleEmbedding& L : subs) {
            if (L.total_dim() == 0) continue;
            cands.push_back({L, sf.phase(sub_rep(M, L))});
        }
        PhaseValue best = cands[0].second;
        for (const auto& c : cands)
            if (c.second > best) best = c.second;
        std::vector<const SubmoduleEmbedding*> winners;
        for (const auto& c : cands)
            if (c.second == best) winners.push_back(&c.first);

        // The span of all maximal-phase subobjects is the one they all
        // factor through.
        SubmoduleEmbedding W;
        for (int v = 0; v < M.algebra().vertex_count; ++v) {
            FpMat acc(M.algebra().p, static_cast<std::size_t>(M.dims()[v]), 0);
            for (const SubmoduleEmbedding* L : winners) acc = acc.hstack(L->basis[v]);
            W.basis.push_back(acc.column_span_canonical());
        }
        if (!is_arrow_stable(M, W))
            throw InternalAssertion("span of maximal-phase subobjects is not a submodule");
        Representation Wrep = sub_rep(M, W);
        if (sf.phase(Wrep) != best)
            throw InternalAssertion("maximal destabilizing subobject is not unique");
        for (const SubmoduleEmbedding* L : winners) {
            Representation Lrep = sub_rep(M, *L);
            Morphism h{Lrep, Wrep, {}};
            for (int v = 0; v < M.algebra().vertex_count; ++v) {
                FpMat x(M.algebra().p, 0, 0);
                if (!W.basis[v].solve_columns(L->basis[v], &x))
                    throw InternalAssertion("equal-phase subobject does not factor through the span");
                h.blocks.push_back(std::move(x));
            }
            validate_morphism(h); // factoring certificate
        }
        return {Wrep, inclusion_of(M, W), dir, best};
    }

    std::vector<std::pair<SubmoduleEmbedding, PhaseValue>> cands;
    for (const SubmoduleEmbedding& L : subs) {
        if (L.total_dim() == M.total_dim()) continue;
        cands.push_back({L, sf.phase(quotient_by(M, L).first)});
    }
    PhaseValue best = cands[0].second;
    for (const auto& c : cands)
        if (c.second < best) best = c.second;
    std::vector<const SubmoduleEmbedding*> winners;
    for (const auto& c : cands)
        if (c.second == best) winners.push_back(&c.first);

    // Kernels of minimal-phase quotients intersect to the kernel of the
    // one every minimal-phase quotient factors through.
    SubmoduleEmbedding K = *winners[0];
    for (std::size_t i = 1; i < winners.size(); ++i)
        for (int v = 0; v < M.algebra().vertex_count; ++v)
            K.basis[v] = intersect_subspaces(K.basis[v], winners[i]->basis[v]);
    if (!is_arrow_stable(M, K))
        throw InternalAssertion("intersection of kernels is not a submodule");
    auto [W, proj] = quotient_by(M, K);
    if (sf.phase(W) != best)
        throw InternalAssertion("minimal destabilizing quotient is not unique");
    for (const SubmoduleEmbedding* L : winners) {
        auto [Q, projL] = quotient_by(M, *L);
        Morphism h{W, Q, {}};
        for (int v = 0; v < M.algebra().vertex_count; ++v) {
            // h with h * proj = projL; proj has full row rank.
            FpMat rinv(M.algebra().p, 0, 0);
            if (!proj.blocks[v].transpose().solve_columns(
                    projL.blocks[v].transpose(), &rinv))
                throw InternalAssertion("equal-phase quotient does not factor through the winner");
            h.blocks.push_back(rinv.transpose());
            if (h.blocks[static_cast<std::size_t>(v)].mul(proj.blocks[v]) != projL.blocks[v])
                throw InternalAssertion("quotient factoring check failed");
        }
        validate_morphism(h);
    }
    return {W, proj, dir, best};
}

HNFiltration hn_filtration(const StabilityFunction& sf, const Representation& M,
                           const Limits& lim) {
    if (M.is_zero()) throw ZeroObject("the zero module has no Harder-Narasimhan filtration");
    HNFiltration out;
    const AlgebraSpec& alg = M.algebra();

    SubmoduleEmbedding prev;
    for (int v = 0; v < alg.vertex_count; ++v)
        prev.basis.push_back(FpMat(alg.p, static_cast<std::size_t>(M.dims()[v]), 0));
    Representation Q = M;
    Morphism proj{M, M, {}}; // projection M -> Q, starts as the identity
    for (int v = 0; v < alg.vertex_count; ++v)
        proj.blocks.push_back(FpMat::identity(alg.p, static_cast<std::size_t>(M.dims()[v])));

    while (!Q.is_zero()) {
        Destabilizer mds = extremal_destabilizer(sf, Q, Direction::Subobject, lim);
        const SubmoduleEmbedding* Wq = nullptr;
        SubmoduleEmbedding wq_local;
        wq_local.basis = mds.witness.blocks; // inclusion blocks are the basis
        Wq = &wq_local;

        SubmoduleEmbedding step;
        for (int v = 0; v < alg.vertex_count; ++v) {
            FpMat lift(alg.p, 0, 0);
            if (!proj.blocks[v].solve_columns(Wq->basis[v], &lift))
                throw InternalAssertion("projection is not surjective onto the next factor");
            step.basis.push_back(prev.basis[v].hstack(lift).column_span_canonical());
        }
        if (!is_arrow_stable(M, step))
            throw InternalAssertion("Harder-Narasimhan step is not a submodule");
        out.steps.push_back(step);
        out.factors.push_back(mds.object);
        out.phases.push_back(mds.phase);
        if (out.phases.size() > 1 && !(out.phases.back() < out.phases[out.phases.size() - 2]))
            throw InternalAssertion("Harder-Narasimhan phases are not strictly decreasing");

        if (mds.object.total_dim() == Q.total_dim()) break;
        auto [Qn, projn] = quotient_by(Q, *Wq);
        Morphism composed{M, Qn, {}};
        for (int v = 0; v < alg.vertex_count; ++v)
            composed.blocks.push_back(projn.blocks[v].mul(proj.blocks[v]));
        proj = std::move(composed);
        Q = Qn;
        prev = out.steps.back();
    }
    if (out.steps.empty() || out.steps.back().total_dim() != M.total_dim())
        throw InternalAssertion("Harder-Narasimhan filtration did not exhaust the module");
    return out;
}

std::vector<std::pair<Representation, PhaseValue>> hn_factors_by_quotients(
    const StabilityFunction& sf, const Representation& M, const Limits& lim) {
    if (M.is_zero()) throw ZeroObject("the zero module has no Harder-Narasimhan filtration");
    std::vector<std::pair<Representation, PhaseValue>> rev;
    Representation cur = M;
    while (!cur.is_zero()) {
        Destabilizer mdq = extremal_destabilizer(sf, cur, Direction::Quotient, lim);
        rev.push_back({mdq.object, mdq.phase});
        SubmoduleEmbedding K = kernel_of_blocks(mdq.witness.blocks);
        if (K.total_dim() == cur.total_dim())
            throw InternalAssertion("quotient peeling made no progress");
        cur = sub_rep(cur, K);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

namespace {

std::vector<Representation> stable_factors_route(const StabilityFunction& sf,
                                                 const Representation& M, bool lex_last,
                                                 const Limits& lim) {
    PhaseValue pm = sf.phase(M);
    std::vector<SubmoduleEmbedding> subs = enumerate_submodules(M, lim);
    const SubmoduleEmbedding* pick = nullptr;
    for (const SubmoduleEmbedding& L : subs) {
        int t = L.total_dim();
        if (t == 0 || t == M.total_dim()) continue;
        if (sf.phase(sub_rep(M, L)) != pm) continue;
        if (!pick || t < pick->total_dim() ||
            (lex_last && t == pick->total_dim() && L.encode() > pick->encode()))
            pick = &L;
    }
    if (!pick) return {M}; // no proper equal-phase subobject: stable
    // A minimal-dimension equal-phase subobject is stable.
    std::vector<Representation> out{sub_rep(M, *pick)};
    Representation rest = quotient_by(M, *pick).first;
    std::vector<Representation> tail = stable_factors_route(sf, rest, lex_last, lim);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

bool same_iso_multiset(std::vector<Representation> a, std::vector<Representation> b,
                       const Limits& lim) {
    if (a.size() != b.size()) return false;
    for (const Representation& x : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (is_isomorphic(x, b[j], lim)) {
                b.erase(b.begin() + static_cast<std::ptrdiff_t>(j));
                matched = true;
                break;
            }
        if (!matched) return false;
    }
    return true;
}

} // namespace

std::vector<Representation> stable_factors(const StabilityFunction& sf,
                                           const Representation& M, const Limits& lim) {
    if (M.is_zero()) throw ZeroObject("the zero module has no stable factors");
    if (!is_semistable(sf, M, lim))
        throw NotSemistable("stable factors are only defined for semistable modules");
    std::vector<Representation> first = stable_factors_route(sf, M, false, lim);
    std::vector<Representation> second = stable_factors_route(sf, M, true, lim);
    if (!same_iso_multiset(first, second, lim))
        throw InternalAssertion("stable factor multisets from two selection orders differ");
    return first;
}

std::vector<int> wide_slice(const StabilityFunction& sf, const ModuleUniverse& U,
                            const PhaseValue& p) {
    std::vector<int> out;
    for (int id = 0; id < U.class_count(); ++id) {
        try {
            if (sf.phase_of_class(U, id) != p) continue;
            if (class_semistable(sf, U, id)) out.push_back(id);
        } catch (const OutOfUniverse&) {
            continue;
        }
    }
    return out;
}

std::vector<int> stable_slice(const StabilityFunction& sf, const ModuleUniverse& U,
                              const PhaseValue& p) {
    std::vector<int> out;
    for (int id = 0; id < U.class_count(); ++id) {
        try {
            if (sf.phase_of_class(U, id) != p) continue;
            if (class_stable(sf, U, id)) out.push_back(id);
        } catch (const OutOfUniverse&) {
            continue;
        }
    }
    return out;
}

std::vector<PhaseValue> attained_phases(const StabilityFunction& sf, const ModuleUniverse& U) {
    std::vector<PhaseValue> out;
    for (int id = 0; id < U.class_count(); ++id) {
        try {
            PhaseValue p = sf.phase_of_class(U, id);
            bool seen = false;
            for (const PhaseValue& q : out)
                if (q == p) {
                    seen = true;
                    break;
                }
            if (!seen) out.push_back(p);
        } catch (const OutOfUniverse&) {
            continue;
        }
    }
    std::sort(out.begin(), out.end(), [](const PhaseValue& a, const PhaseValue& b) { return b < a; });
    return out;
}

} // namespace qstab
