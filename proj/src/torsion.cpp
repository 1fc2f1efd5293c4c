#include "qstab/torsion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qstab {

bool ModuleSet::contains(int id) const {
    return std::binary_search(ids.begin(), ids.end(), id);
}

bool ModuleSet::proper_subset_of(const ModuleSet& o) const {
    if (ids.size() >= o.ids.size()) return false;
    return std::includes(o.ids.begin(), o.ids.end(), ids.begin(), ids.end());
}

ModuleSet torsion_class_at(const StabilityFunction& sf, const ModuleUniverse& U,
                           const PhaseValue& p) {
    ModuleSet T;
    for (int id : U.indec_ids()) {
        bool in = true;
        for (int q : U.quot_class_ids(id))
            if (sf.phase_of_class(U, q) < p) {
                in = false;
                break;
            }
        if (in) T.ids.push_back(id);
    }
    return T;
}

ModuleSet torsion_free_at(const StabilityFunction& sf, const ModuleUniverse& U,
                          const PhaseValue& p) {
    ModuleSet F;
    for (int id : U.indec_ids()) {
        bool in = true;
        for (int s : U.sub_class_ids(id))
            if (!(sf.phase_of_class(U, s) < p)) {
                in = false;
                break;
            }
        if (in) F.ids.push_back(id);
    }
    return F;
}

ModuleSet torsion_class_via_mdq(const StabilityFunction& sf, const ModuleUniverse& U,
                                const PhaseValue& p) {
    ModuleSet T;
    for (int id : U.indec_ids()) {
        Destabilizer mdq =
            extremal_destabilizer(sf, U.cls(id).rep, Direction::Quotient, U.limits());
        if (mdq.phase >= p) T.ids.push_back(id);
    }
    return T;
}

ModuleSet torsion_free_via_mds(const StabilityFunction& sf, const ModuleUniverse& U,
                               const PhaseValue& p) {
    ModuleSet F;
    for (int id : U.indec_ids()) {
        Destabilizer mds =
            extremal_destabilizer(sf, U.cls(id).rep, Direction::Subobject, U.limits());
        if (mds.phase < p) F.ids.push_back(id);
    }
    return F;
}

std::vector<int> filt_closure(const ModuleUniverse& U, const std::vector<int>& gen_classes) {
    std::vector<char> gen(static_cast<std::size_t>(U.class_count()), 0);
    std::vector<char> in(static_cast<std::size_t>(U.class_count()), 0);
    for (int g : gen_classes) {
        gen[static_cast<std::size_t>(g)] = 1;
        in[static_cast<std::size_t>(g)] = 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const ModuleUniverse::SES& s : U.ses_table()) {
            if (in[static_cast<std::size_t>(s.mid)]) continue;
            if (gen[static_cast<std::size_t>(s.quot)] && in[static_cast<std::size_t>(s.sub)]) {
                in[static_cast<std::size_t>(s.mid)] = 1;
                changed = true;
            }
        }
    }
    std::vector<int> out;
    for (int id = 0; id < U.class_count(); ++id)
        if (in[static_cast<std::size_t>(id)]) out.push_back(id);
    return out;
}

std::vector<int> fac_closure(const ModuleUniverse& U, const std::vector<int>& gen_classes) {
    std::set<int> in(gen_classes.begin(), gen_classes.end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> snapshot(in.begin(), in.end());
        for (int c : snapshot)
            for (int q : U.quot_class_ids(c))
                if (in.insert(q).second) changed = true;
    }
    return std::vector<int>(in.begin(), in.end());
}

namespace {

std::vector<int> semistable_classes_at_least(const StabilityFunction& sf,
                                             const ModuleUniverse& U, const PhaseValue& p) {
    std::vector<int> out;
    for (int id = 0; id < U.class_count(); ++id) {
        try {
            if (sf.phase_of_class(U, id) < p) continue;
            if (class_semistable(sf, U, id)) out.push_back(id);
        } catch (const OutOfUniverse&) {
            continue;
        }
    }
    return out;
}

ModuleSet restrict_to_indecs(const ModuleUniverse& U, const std::vector<int>& classes) {
    ModuleSet out;
    for (int c : classes)
        if (U.is_indec_class(c)) out.ids.push_back(c);
    std::sort(out.ids.begin(), out.ids.end());
    return out;
}

// Class-level membership mask: a class belongs when all its summands are
// in the indec set.
std::vector<char> class_mask(const ModuleUniverse& U, const ModuleSet& S) {
    std::vector<char> mask(static_cast<std::size_t>(U.class_count()), 0);
    for (int id = 0; id < U.class_count(); ++id) {
        bool in = true;
        for (int s : U.cls(id).summands)
            if (!S.contains(s)) {
                in = false;
                break;
            }
        mask[static_cast<std::size_t>(id)] = in ? 1 : 0;
    }
    return mask;
}

} // namespace

ModuleSet torsion_class_via_filt(const StabilityFunction& sf, const ModuleUniverse& U,
                                 const PhaseValue& p, bool fac_first) {
    std::vector<int> gens = semistable_classes_at_least(sf, U, p);
    if (fac_first) gens = fac_closure(U, gens);
    return restrict_to_indecs(U, filt_closure(U, gens));
}

bool is_torsion_class(const ModuleUniverse& U, const ModuleSet& T) {
    std::vector<char> mask = class_mask(U, T);
    for (int id = 0; id < U.class_count(); ++id) {
        if (!mask[static_cast<std::size_t>(id)]) continue;
        for (int q : U.quot_class_ids(id))
            if (!mask[static_cast<std::size_t>(q)]) return false;
    }
    for (const ModuleUniverse::SES& s : U.ses_table())
        if (mask[static_cast<std::size_t>(s.sub)] && mask[static_cast<std::size_t>(s.quot)] &&
            !mask[static_cast<std::size_t>(s.mid)])
            return false;
    return true;
}

bool verify_torsion_pair(const ModuleUniverse& U, const ModuleSet& T, const ModuleSet& F,
                         std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<char> tmask = class_mask(U, T), fmask = class_mask(U, F);

    if (!is_torsion_class(U, T)) return fail("torsion side is not closed under quotients and extensions");
    for (int id = 0; id < U.class_count(); ++id) {
        if (!fmask[static_cast<std::size_t>(id)]) continue;
        for (int s : U.sub_class_ids(id))
            if (!fmask[static_cast<std::size_t>(s)])
                return fail("torsion-free side is not closed under subobjects");
    }
    for (const ModuleUniverse::SES& s : U.ses_table())
        if (fmask[static_cast<std::size_t>(s.sub)] && fmask[static_cast<std::size_t>(s.quot)] &&
            !fmask[static_cast<std::size_t>(s.mid)])
            return fail("torsion-free side is not closed under extensions");

    for (int t : T.ids)
        for (int f : F.ids)
            if (!hom_basis(U.cls(t).rep, U.cls(f).rep).empty())
                return fail("Hom(" + U.cls(t).name + ", " + U.cls(f).name + ") is nonzero");
    for (int id : U.indec_ids()) {
        if (!T.contains(id)) {
            bool witnessed = false;
            for (int f : F.ids)
                if (!hom_basis(U.cls(id).rep, U.cls(f).rep).empty()) {
                    witnessed = true;
                    break;
                }
            if (!witnessed)
                return fail("class " + U.cls(id).name +
                            " is outside the torsion side yet has no nonzero map to the "
                            "torsion-free side");
        }
        if (!F.contains(id)) {
            bool witnessed = false;
            for (int t : T.ids)
                if (!hom_basis(U.cls(t).rep, U.cls(id).rep).empty()) {
                    witnessed = true;
                    break;
                }
            if (!witnessed)
                return fail("class " + U.cls(id).name +
                            " is outside the torsion-free side yet receives no nonzero map "
                            "from the torsion side");
        }
    }

    // Canonical sequence: the largest torsion subobject has torsion-free
    // quotient.
    for (int id = 0; id < U.class_count(); ++id) {
        const Representation& M = U.cls(id).rep;
        SubmoduleEmbedding trace;
        for (int v = 0; v < U.algebra().vertex_count; ++v)
            trace.basis.push_back(FpMat(U.algebra().p, static_cast<std::size_t>(M.dims()[v]), 0));
        for (const SubmoduleEmbedding& L : enumerate_submodules(M, U.limits())) {
            if (L.total_dim() == 0) continue;
            int sub_id = U.classify(sub_rep(M, L));
            if (!tmask[static_cast<std::size_t>(sub_id)]) continue;
            for (int v = 0; v < U.algebra().vertex_count; ++v)
                trace.basis[v] = trace.basis[v].hstack(L.basis[v]).column_span_canonical();
        }
        if (!is_arrow_stable(M, trace))
            return fail("trace of the torsion side in " + U.cls(id).name + " is not a submodule");
        if (trace.total_dim() > 0) {
            int trace_id = U.classify(sub_rep(M, trace));
            if (!tmask[static_cast<std::size_t>(trace_id)])
                return fail("trace of the torsion side in " + U.cls(id).name +
                            " is not in the torsion side");
        }
        if (trace.total_dim() < M.total_dim()) {
            int quot_id = U.classify(quotient_by(M, trace).first);
            if (!fmask[static_cast<std::size_t>(quot_id)])
                return fail("quotient by the torsion trace of " + U.cls(id).name +
                            " is not torsion-free");
        }
    }
    return true;
}

std::vector<ModuleSet> all_torsion_classes(const ModuleUniverse& U) {
    int k = static_cast<int>(U.indec_ids().size());
    if (k > U.limits().max_oracle_indecs)
        throw SearchSpaceExceeded("torsion class oracle over " + std::to_string(k) +
                                  " indecomposables exceeds the cap " +
                                  std::to_string(U.limits().max_oracle_indecs));
    std::vector<ModuleSet> out;
    for (long long bits = 0; bits < (1LL << k); ++bits) {
        ModuleSet S;
        for (int i = 0; i < k; ++i)
            if (bits & (1LL << i)) S.ids.push_back(U.indec_ids()[static_cast<std::size_t>(i)]);
        if (is_torsion_class(U, S)) out.push_back(std::move(S));
    }
    return out;
}

std::vector<ChainEntry> chain_of_torsion_classes(const StabilityFunction& sf,
                                                 const ModuleUniverse& U) {
    std::vector<PhaseValue> attained = attained_phases(sf, U);
    if (attained.empty()) return {};

    std::vector<PhaseValue> sweep;
    if (sf.kind() == StabilityFunction::Kind::Path) {
        sweep.push_back(PhaseValue::finite(Rat(1)));
    } else {
        PhaseValue hi = attained.front();
        ++hi.tag;
        sweep.push_back(hi);
    }
    sweep.insert(sweep.end(), attained.begin(), attained.end());
    if (sf.kind() == StabilityFunction::Kind::Path) {
        sweep.push_back(PhaseValue::finite(Rat(0)));
    } else {
        PhaseValue lo = attained.back();
        --lo.tag;
        sweep.push_back(lo);
    }

    std::vector<ChainEntry> chain;
    for (const PhaseValue& p : sweep) {
        ModuleSet T = torsion_class_at(sf, U, p);
        if (!chain.empty()) {
            if (T == chain.back().torsion) continue;
            if (!chain.back().torsion.proper_subset_of(T))
                throw InternalAssertion("torsion classes failed to grow as the phase decreased");
        }
        chain.push_back({p, std::move(T)});
    }
    if (chain.front().torsion.ids.size() != 0)
        throw InternalAssertion("chain does not start at the zero torsion class");
    if (chain.back().torsion.ids.size() != U.indec_ids().size())
        throw InternalAssertion("chain does not end at the full torsion class");
    return chain;
}

bool is_discrete_at(const StabilityFunction& sf, const ModuleUniverse& U, const PhaseValue& p) {
    return stable_slice(sf, U, p).size() <= 1;
}

bool is_discrete(const StabilityFunction& sf, const ModuleUniverse& U) {
    for (const PhaseValue& p : attained_phases(sf, U))
        if (!is_discrete_at(sf, U, p)) return false;
    return true;
}

MGSReport verify_mgs(const StabilityFunction& sf, const ModuleUniverse& U) {
    MGSReport report;
    report.chain = chain_of_torsion_classes(sf, U);

    bool criterion = true;
    for (const PhaseValue& p : attained_phases(sf, U)) {
        std::vector<int> stables = stable_slice(sf, U, p);
        if (stables.size() > 1) {
            criterion = false;
            std::string names;
            for (std::size_t i = 0; i < stables.size(); ++i) {
                if (i) names += ", ";
                names += U.cls(stables[i]).name;
            }
            report.certificates.push_back("phase " + phase_to_string(p) + " has " +
                                          std::to_string(stables.size()) +
                                          " stable classes: " + names);
        }
    }

    std::vector<ModuleSet> all = all_torsion_classes(U);
    auto is_known = [&](const ModuleSet& S) {
        for (const ModuleSet& X : all)
            if (X == S) return true;
        return false;
    };
    for (const ChainEntry& e : report.chain)
        if (!is_known(e.torsion))
            throw InternalAssertion("a chain entry is not a torsion class");

    bool oracle = true;
    for (std::size_t i = 0; i + 1 < report.chain.size(); ++i) {
        const ModuleSet& lo = report.chain[i].torsion;
        const ModuleSet& hi = report.chain[i + 1].torsion;
        for (const ModuleSet& X : all)
            if (lo.proper_subset_of(X) && X.proper_subset_of(hi)) {
                oracle = false;
                std::string names;
                for (std::size_t j = 0; j < X.ids.size(); ++j) {
                    if (j) names += ", ";
                    names += U.cls(X.ids[j]).name;
                }
                report.certificates.push_back(
                    "torsion class {" + names + "} refines the step from phase " +
                    phase_to_string(report.chain[i].phase) + " to " +
                    phase_to_string(report.chain[i + 1].phase));
            }
    }
    if (report.chain.empty()) oracle = criterion = true;

    if (criterion != oracle)
        throw OracleDisagreement(
            "discreteness criterion says " + std::string(criterion ? "maximal" : "refinable") +
            " but the exhaustive torsion class search says " +
            std::string(oracle ? "maximal" : "refinable"));
    report.mgs = criterion;
    return report;
}

} // namespace qstab
