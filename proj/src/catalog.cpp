#include "qstab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "qstab/errors.hpp"
#include "qstab/fp.hpp"

namespace qstab {

namespace {

// Little endian coefficient vectors over F_p, leading coefficient last.
using Poly = std::vector<int>;

Poly poly_trim(Poly f) {
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, int p) {
    Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    return h;
}

Poly poly_pow(const Poly& f, int e, int p) {
    Poly r{1};
    for (int i = 0; i < e; ++i) r = poly_mul(r, f, p);
    return r;
}

// Remainder of f modulo monic g.
Poly poly_rem(Poly f, const Poly& g, int p) {
    int dg = static_cast<int>(g.size()) - 1;
    f = poly_trim(std::move(f));
    while (static_cast<int>(f.size()) - 1 >= dg && !(f.size() == 1 && f[0] == 0)) {
        int lead = f.back();
        int shift = static_cast<int>(f.size()) - 1 - dg;
        for (int i = 0; i <= dg; ++i)
            f[i + shift] = ((f[i + shift] - lead * g[i]) % p + p) % p;
        f = poly_trim(std::move(f));
        if (static_cast<int>(f.size()) - 1 < dg) break;
    }
    return f;
}

bool poly_is_zero(const Poly& f) {
    return f.size() == 1 && f[0] == 0;
}

std::string poly_name(const Poly& f) {
    int d = static_cast<int>(f.size()) - 1;
    std::vector<std::string> terms;
    for (int k = d; k >= 0; --k) {
        int c = f[k];
        if (c == 0) continue;
        std::string t;
        if (k == 0) {
            t = std::to_string(c);
        } else {
            if (c != 1) t = std::to_string(c);
            t += "x";
            if (k >= 2) t += std::to_string(k);
        }
        terms.push_back(t);
    }
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += "+";
        out += terms[i];
    }
    return out;
}

struct RegularPoint {
    std::string name; // "0".."p-1", "inf", or a polynomial name
    int degree = 1;
    bool at_infinity = false;
    Poly f; // minimal polynomial of a finite point
};

// Closed points of the projective line over F_p with degree <= max_degree:
// the finite rational points, infinity, then higher degree points.
std::vector<RegularPoint> projective_points(int p, int max_degree) {
    std::vector<RegularPoint> pts;
    for (int lam = 0; lam < p; ++lam) {
        RegularPoint pt;
        pt.name = std::to_string(lam);
        pt.f = {(p - lam) % p, 1};
        pts.push_back(pt);
    }
    RegularPoint inf;
    inf.name = "inf";
    inf.at_infinity = true;
    pts.push_back(inf);
    for (const auto& f : monic_irreducibles(p, max_degree)) {
        if (f.size() <= 2) continue; // rational points already listed
        RegularPoint pt;
        pt.name = poly_name(f);
        pt.degree = static_cast<int>(f.size()) - 1;
        pt.f = f;
        pts.push_back(pt);
    }
    return pts;
}

bool is_kronecker_quiver(const AlgebraSpec& A) {
    return A.vertex_count == 2 && A.arrows.size() == 2 && A.relations.empty() &&
           A.arrows[0].source == 0 && A.arrows[0].target == 1 &&
           A.arrows[1].source == 0 && A.arrows[1].target == 1;
}

// Linear quiver: exactly one arrow between vertices k and k+1, either
// direction, no relations.
bool is_type_a_quiver(const AlgebraSpec& A) {
    int n = A.vertex_count;
    if (static_cast<int>(A.arrows.size()) != n - 1 || !A.relations.empty()) return false;
    std::vector<int> seen(n > 0 ? n - 1 : 0, 0);
    for (const auto& a : A.arrows) {
        int lo = std::min(a.source, a.target);
        int hi = std::max(a.source, a.target);
        if (hi != lo + 1 || lo < 0 || lo >= n - 1) return false;
        seen[lo] += 1;
    }
    for (int s : seen)
        if (s != 1) return false;
    return true;
}

FpMat jordan_block(uint32_t p, int size, uint32_t lambda) {
    FpMat J(p, size, size);
    for (int i = 0; i < size; ++i) {
        J.set(i, i, lambda);
        if (i + 1 < size) J.set(i, i + 1, 1);
    }
    return J;
}

FpMat companion(uint32_t p, const Poly& f) {
    int n = static_cast<int>(f.size()) - 1;
    FpMat C(p, n, n);
    for (int i = 0; i + 1 < n; ++i) C.set(i + 1, i, 1);
    for (int i = 0; i < n; ++i) C.set(i, n - 1, ((-f[i]) % static_cast<int>(p) + p) % p);
    return C;
}

Representation kron_preprojective(const std::shared_ptr<const AlgebraSpec>& alg, int n) {
    FpMat a(alg->p, n + 1, n), b(alg->p, n + 1, n);
    for (int i = 0; i < n; ++i) {
        a.set(i, i, 1);
        b.set(i + 1, i, 1);
    }
    return Representation(alg, {n, n + 1}, {a, b});
}

Representation kron_preinjective(const std::shared_ptr<const AlgebraSpec>& alg, int n) {
    FpMat a(alg->p, n, n + 1), b(alg->p, n, n + 1);
    for (int i = 0; i < n; ++i) {
        a.set(i, i, 1);
        b.set(i, i + 1, 1);
    }
    return Representation(alg, {n + 1, n}, {a, b});
}

Representation kron_regular(const std::shared_ptr<const AlgebraSpec>& alg,
                            const RegularPoint& pt, int m) {
    uint32_t p = alg->p;
    int d = pt.degree * m;
    if (pt.at_infinity)
        return Representation(alg, {d, d}, {jordan_block(p, d, 0), FpMat::identity(p, d)});
    FpMat b = (pt.degree == 1)
                  ? jordan_block(p, d, (p - pt.f[0] % p) % p)
                  : companion(p, poly_pow(pt.f, m, p));
    return Representation(alg, {d, d}, {FpMat::identity(p, d), b});
}

struct KronEntry {
    NamedRep nr;
    enum class Kind { SimpleProj, SimpleInj, Preproj, Preinj, Regular } kind;
    int n = 0;          // family index for preprojective / preinjective
    std::string point;  // regular point name
    int point_degree = 1;
};

std::vector<KronEntry> kronecker_catalog(const std::shared_ptr<const AlgebraSpec>& alg,
                                         const DimVec& bound) {
    int b1 = bound[0], b2 = bound[1];
    std::vector<KronEntry> out;
    auto add = [&](NamedRep nr, KronEntry::Kind k) {
        KronEntry e{std::move(nr), k, 0, {}, 0};
        out.push_back(std::move(e));
    };
    if (b1 >= 1)
        add({"S1", kron_preinjective(alg, 0)}, KronEntry::Kind::SimpleInj);
    if (b2 >= 1)
        add({"S2", kron_preprojective(alg, 0)}, KronEntry::Kind::SimpleProj);
    for (int n = 1; n <= b1 && n + 1 <= b2; ++n) {
        add({"P" + std::to_string(n), kron_preprojective(alg, n)}, KronEntry::Kind::Preproj);
        out.back().n = n;
    }
    for (int n = 1; n + 1 <= b1 && n <= b2; ++n) {
        add({"I" + std::to_string(n), kron_preinjective(alg, n)}, KronEntry::Kind::Preinj);
        out.back().n = n;
    }
    int mreg = std::min(b1, b2);
    for (const auto& pt : projective_points(alg->p, mreg)) {
        for (int m = 1; m * pt.degree <= mreg; ++m) {
            add({"R[" + pt.name + "]" + std::to_string(m), kron_regular(alg, pt, m)},
                KronEntry::Kind::Regular);
            out.back().point = pt.name;
            out.back().point_degree = pt.degree;
            out.back().n = m;
        }
    }
    return out;
}

std::string join_dims(const DimVec& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s;
}

} // namespace

std::shared_ptr<const AlgebraSpec> builtin_algebra(const std::string& id, int p) {
    if (p < 2 || !is_prime(static_cast<uint32_t>(p)))
        throw ValidationError("field size " + std::to_string(p) + " is not prime");
    std::string s;
    for (char c : id) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    auto alg = std::make_shared<AlgebraSpec>();
    alg->p = static_cast<uint32_t>(p);

    if (s == "kronecker") {
        alg->vertex_count = 2;
        alg->arrows = {{"a", 0, 1}, {"b", 0, 1}};
        alg->builtin_id = "kronecker";
        return alg;
    }
    if (!s.empty() && s[0] == 'a') {
        std::string base = s.substr(1), word;
        auto colon = base.find(':');
        if (colon != std::string::npos) {
            word = base.substr(colon + 1);
            base = base.substr(0, colon);
        }
        if (!base.empty() && base.find_first_not_of("0123456789") == std::string::npos) {
            int n = std::stoi(base);
            if (n >= 1 && n <= 8) {
                if (word.empty()) word.assign(static_cast<std::size_t>(n - 1), 'r');
                if (static_cast<int>(word.size()) == n - 1 &&
                    word.find_first_not_of("rl") == std::string::npos) {
                    alg->vertex_count = n;
                    for (int k = 0; k + 1 < n; ++k) {
                        std::string name = "a" + std::to_string(k + 1);
                        if (word[static_cast<std::size_t>(k)] == 'r')
                            alg->arrows.push_back({name, k, k + 1});
                        else
                            alg->arrows.push_back({name, k + 1, k});
                    }
                    alg->builtin_id = "A" + std::to_string(n);
                    if (word != std::string(static_cast<std::size_t>(n - 1), 'r'))
                        alg->builtin_id += ":" + word;
                    return alg;
                }
            }
        }
    }
    throw UnknownBuiltin("unknown builtin algebra '" + id + "'");
}

std::vector<NamedRep> an_interval_modules(const std::shared_ptr<const AlgebraSpec>& alg) {
    const AlgebraSpec& A = *alg;
    if (!is_type_a_quiver(A))
        throw ValidationError("interval modules need a linear quiver without relations");
    int n = A.vertex_count;
    bool all_right = true;
    for (const auto& a : A.arrows)
        if (a.target != a.source + 1) all_right = false;

    std::vector<NamedRep> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            DimVec dims(n, 0);
            for (int v = i; v <= j; ++v) dims[v - 1] = 1;
            std::vector<FpMat> mats;
            for (const auto& a : A.arrows) {
                bool inside = dims[a.source] == 1 && dims[a.target] == 1;
                FpMat m(A.p, dims[a.target], dims[a.source]);
                if (inside) m.set(0, 0, 1);
                mats.push_back(m);
            }
            std::string name;
            if (i == j)
                name = "S" + std::to_string(i);
            else if (!all_right)
                name = "M" + std::to_string(i) + "." + std::to_string(j);
            else if (j == n)
                name = "P" + std::to_string(i);
            else if (i == 1)
                name = "I" + std::to_string(j);
            else
                name = "M" + std::to_string(i) + "." + std::to_string(j);
            out.push_back({name, Representation(alg, dims, mats)});
        }
    }
    return out;
}

std::vector<NamedRep> kronecker_family(int max_n, int p) {
    if (max_n < 0) throw ValidationError("family index must be nonnegative");
    if (max_n > 3) throw BoundExceeded("closed-form Kronecker family capped at n = 3");
    auto alg = builtin_algebra("kronecker", p);
    std::vector<NamedRep> out;
    for (int n = 0; n <= max_n; ++n)
        out.push_back({"P" + std::to_string(n), kron_preprojective(alg, n)});
    for (int n = 0; n <= max_n; ++n)
        out.push_back({"I" + std::to_string(n), kron_preinjective(alg, n)});
    if (max_n >= 1) {
        for (const auto& pt : projective_points(p, 1))
            out.push_back({"R[" + pt.name + "]1", kron_regular(alg, pt, 1)});
    }
    return out;
}

std::vector<std::vector<int>> monic_irreducibles(int p, int max_degree) {
    std::vector<Poly> irr;
    if (max_degree < 1) return irr;
    for (int lam = 0; lam < p; ++lam) irr.push_back({(p - lam) % p, 1});
    for (int d = 2; d <= max_degree; ++d) {
        // All monic degree d polynomials, low coefficients cycling fastest.
        std::vector<int> c(d, 0);
        while (true) {
            Poly f(c.begin(), c.end());
            f.push_back(1);
            bool reducible = false;
            for (const auto& g : irr) {
                if (2 * (static_cast<int>(g.size()) - 1) > d) break;
                if (poly_is_zero(poly_rem(f, g, p))) { reducible = true; break; }
            }
            if (!reducible) irr.push_back(f);
            int k = 0;
            while (k < d && ++c[k] == p) c[k++] = 0;
            if (k == d) break;
        }
    }
    std::stable_sort(irr.begin(), irr.end(),
                     [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
    return irr;
}

std::vector<NamedRep> brute_indecs(const std::shared_ptr<const AlgebraSpec>& alg,
                                   const DimVec& bound, const Limits& lim) {
    auto reps = enumerate_indecomposables_brute(alg, bound, lim);
    std::map<DimVec, int> counter;
    std::vector<NamedRep> out;
    for (auto& r : reps) {
        int k = ++counter[r.dims()];
        out.push_back({"X(" + join_dims(r.dims()) + ")#" + std::to_string(k), std::move(r)});
    }
    return out;
}

std::vector<NamedRep> catalog_named_indecs(const std::shared_ptr<const AlgebraSpec>& alg,
                                           const DimVec& bound, const Limits& lim) {
    if (static_cast<int>(bound.size()) != alg->vertex_count)
        throw ValidationError("bound length does not match the vertex count");
    for (int b : bound)
        if (b < 0) throw ValidationError("bound entries must be nonnegative");

    if (is_kronecker_quiver(*alg)) {
        std::vector<NamedRep> out;
        for (auto& e : kronecker_catalog(alg, bound)) out.push_back(std::move(e.nr));
        return out;
    }
    if (is_type_a_quiver(*alg)) {
        std::vector<NamedRep> out;
        for (auto& nr : an_interval_modules(alg))
            if (dim_leq(nr.rep.dims(), bound)) out.push_back(std::move(nr));
        return out;
    }
    return brute_indecs(alg, bound, lim);
}

StabilityFunction kronecker_slope() {
    return StabilityFunction::slope({Rat(1), Rat(0)}, {Rat(0), Rat(1)});
}

StabilityFunction starred_kronecker_table(std::shared_ptr<const ModuleUniverse> U,
                                          const std::set<std::string>& special,
                                          bool higher_degree_special) {
    if (!is_kronecker_quiver(U->algebra()))
        throw ValidationError("starred table needs the Kronecker quiver");

    auto entries = kronecker_catalog(U->algebra_ptr(), U->bound());
    std::map<std::string, const KronEntry*> by_name;
    std::set<std::string> point_names;
    for (const auto& e : entries) {
        by_name[e.nr.name] = &e;
        if (e.kind == KronEntry::Kind::Regular) point_names.insert(e.point);
    }
    for (const auto& s : special)
        if (!point_names.count(s))
            throw ValidationError("unknown regular point '" + s + "'");

    const PhaseValue plain_one = PhaseValue::finite(Rat(1));
    const PhaseValue starred_one = PhaseValue::finite(Rat(1), -1);

    std::map<int, PhaseValue> phases;
    for (int id : U->indec_ids()) {
        const std::string& name = U->cls(id).name;
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw ValidationError("universe class '" + name + "' is not a catalog module");
        const KronEntry& e = *it->second;
        switch (e.kind) {
            case KronEntry::Kind::SimpleInj: phases[id] = PhaseValue::infinity(); break;
            case KronEntry::Kind::SimpleProj: phases[id] = PhaseValue::finite(Rat(0)); break;
            case KronEntry::Kind::Preproj: phases[id] = PhaseValue::finite(Rat(e.n, e.n + 1)); break;
            case KronEntry::Kind::Preinj: phases[id] = PhaseValue::finite(Rat(e.n + 1, e.n)); break;
            case KronEntry::Kind::Regular: {
                bool side_one = (e.point_degree == 1) ? special.count(e.point) > 0
                                                      : higher_degree_special;
                phases[id] = side_one ? plain_one : starred_one;
                break;
            }
        }
    }

    // Classes reachable from an indecomposable as a subobject or quotient
    // must carry the unrefined slope: the see-saw property pins them there.
    std::set<int> forced;
    for (int id : U->indec_ids()) {
        for (int s : U->sub_class_ids(id)) forced.insert(s);
        for (int q : U->quot_class_ids(id)) forced.insert(q);
    }
    for (int c = 0; c < U->class_count(); ++c) {
        if (U->is_indec_class(c)) continue;
        bool listed = false;
        PhaseValue val;
        if (forced.count(c)) {
            const DimVec& d = U->cls(c).dims;
            val = d[1] == 0 ? PhaseValue::infinity() : PhaseValue::finite(Rat(d[0], d[1]));
            listed = true;
        }
        // A sum of regulars on a single side sits at that side's phase.
        bool all_regular = true;
        bool uniform = true;
        PhaseValue side;
        bool first = true;
        for (int s : U->cls(c).summands) {
            const KronEntry& e = *by_name.at(U->cls(s).name);
            if (e.kind != KronEntry::Kind::Regular) { all_regular = false; break; }
            const PhaseValue& ph = phases.at(s);
            if (first) {
                side = ph;
                first = false;
            } else if (ph != side) {
                uniform = false;
                break;
            }
        }
        if (all_regular && uniform && !first) {
            if (listed && val != side)
                throw InternalAssertion("starred table rules disagree on " + U->cls(c).name);
            val = side;
            listed = true;
        }
        if (listed) phases[c] = val;
    }
    return StabilityFunction::table(std::move(U), std::move(phases));
}

} // namespace qstab
