#include "qstab/universe.hpp"

#include <algorithm>
#include <set>

namespace qstab {

namespace {

struct PendingClass {
    std::vector<int> summands;
    DimVec dims;
};

void collect_multisets(const std::vector<NamedRep>& indecs, const DimVec& bound,
                       std::size_t from, std::vector<int>& current, DimVec& dims,
                       std::vector<PendingClass>& out) {
    if (!current.empty()) out.push_back({current, dims});
    for (std::size_t i = from; i < indecs.size(); ++i) {
        const DimVec& d = indecs[i].rep.dims();
        bool fits = true;
        for (std::size_t v = 0; v < dims.size(); ++v)
            if (dims[v] + d[v] > bound[v]) {
                fits = false;
                break;
            }
        if (!fits) continue;
        for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += d[v];
        current.push_back(static_cast<int>(i));
        collect_multisets(indecs, bound, i, current, dims, out);
        current.pop_back();
        for (std::size_t v = 0; v < dims.size(); ++v) dims[v] -= d[v];
    }
}

} // namespace

std::shared_ptr<const ModuleUniverse> ModuleUniverse::build(
    std::shared_ptr<const AlgebraSpec> alg, DimVec bound, Limits lim) {
    if (static_cast<int>(bound.size()) != alg->vertex_count)
        throw ValidationError("bound length does not match vertex count");
    for (int b : bound)
        if (b < 0) throw ValidationError("bound entries must be nonnegative");
    if (total_of(bound) > lim.max_total_dim)
        throw BoundExceeded("bound total " + std::to_string(total_of(bound)) +
                            " exceeds the cap " + std::to_string(lim.max_total_dim));

    auto U = std::shared_ptr<ModuleUniverse>(new ModuleUniverse());
    U->alg_ = alg;
    U->bound_ = bound;
    U->lim_ = lim;

    std::vector<NamedRep> indecs = catalog_named_indecs(alg, bound, lim);

    // Every nonzero class is a multiset of indecomposables fitting the
    // bound (Krull-Schmidt).
    std::vector<PendingClass> pending;
    std::vector<int> current;
    DimVec dims(bound.size(), 0);
    collect_multisets(indecs, bound, 0, current, dims, pending);
    std::sort(pending.begin(), pending.end(), [](const PendingClass& a, const PendingClass& b) {
        int ta = total_of(a.dims), tb = total_of(b.dims);
        if (ta != tb) return ta < tb;
        if (a.dims != b.dims) return a.dims < b.dims;
        return a.summands < b.summands;
    });

    // Indec ids refer to final class ids; build classes first with indec
    // indices, then remap.
    std::vector<int> indec_class_id(indecs.size(), -1);
    for (const PendingClass& pc : pending) {
        ClassInfo info{Representation::zero(alg), "", {}, pc.dims};
        std::vector<Representation> parts;
        std::string name;
        for (std::size_t k = 0; k < pc.summands.size(); ++k) {
            parts.push_back(indecs[static_cast<std::size_t>(pc.summands[k])].rep);
            if (k) name += "+";
            name += indecs[static_cast<std::size_t>(pc.summands[k])].name;
        }
        info.rep = pc.summands.size() == 1 ? parts[0] : direct_sum(alg, parts);
        info.name = name;
        info.summands = pc.summands; // temporarily indec indices
        int id = static_cast<int>(U->classes_.size());
        if (pc.summands.size() == 1) indec_class_id[static_cast<std::size_t>(pc.summands[0])] = id;
        U->classes_.push_back(std::move(info));
        U->by_name_[name] = id;
    }
    for (ClassInfo& c : U->classes_)
        for (int& s : c.summands) s = indec_class_id[static_cast<std::size_t>(s)];
    for (int id : indec_class_id) {
        if (id < 0) throw InternalAssertion("indecomposable did not fit its own bound");
        U->indec_ids_.push_back(id);
    }
    std::sort(U->indec_ids_.begin(), U->indec_ids_.end());

    // Short exact sequence table over proper nonzero submodules of each
    // class representative.
    std::set<SES> ses;
    U->subs_.resize(U->classes_.size());
    U->quots_.resize(U->classes_.size());
    for (int id = 0; id < U->class_count(); ++id) {
        const Representation& M = U->cls(id).rep;
        std::set<int> subs{id}, quots{id};
        for (const SubmoduleEmbedding& L : enumerate_submodules(M, lim)) {
            int t = L.total_dim();
            if (t == 0 || t == M.total_dim()) continue;
            int sub_id = U->classify(sub_rep(M, L));
            int quot_id = U->classify(quotient_by(M, L).first);
            ses.insert({sub_id, id, quot_id});
            subs.insert(sub_id);
            quots.insert(quot_id);
        }
        U->subs_[static_cast<std::size_t>(id)].assign(subs.begin(), subs.end());
        U->quots_[static_cast<std::size_t>(id)].assign(quots.begin(), quots.end());
    }
    U->ses_.assign(ses.begin(), ses.end());

    // Exactness probe: enlarge the bound by one everywhere and look for
    // indecomposables that escape the original bound.
    U->exact_ = true;
    DimVec probe = bound;
    for (int& b : probe) ++b;
    try {
        for (const NamedRep& nr : catalog_named_indecs(alg, probe, lim))
            if (!dim_leq(nr.rep.dims(), bound)) {
                U->exact_ = false;
                break;
            }
    } catch (const BoundExceeded&) {
        U->exact_ = false;
    } catch (const SearchSpaceExceeded&) {
        U->exact_ = false;
    }

    return U;
}

int ModuleUniverse::classify(const Representation& M) const {
    if (M.is_zero()) throw ZeroObject("the zero module has no isomorphism class id");
    if (!dim_leq(M.dims(), bound_))
        throw OutOfUniverse("dimension vector exceeds the universe bound");
    std::string key = M.encode();
    auto hit = classify_cache_.find(key);
    if (hit != classify_cache_.end()) return hit->second;
    for (int id = 0; id < class_count(); ++id) {
        if (classes_[static_cast<std::size_t>(id)].dims != M.dims()) continue;
        if (is_isomorphic(classes_[static_cast<std::size_t>(id)].rep, M, lim_)) {
            classify_cache_[key] = id;
            return id;
        }
    }
    throw InternalAssertion("module within bound matched no isomorphism class");
}

int ModuleUniverse::class_by_name(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

} // namespace qstab
