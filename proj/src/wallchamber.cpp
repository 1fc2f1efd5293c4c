#include "qstab/wallchamber.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qstab/errors.hpp"

namespace qstab {

namespace {

using Ray = std::pair<long long, long long>;

Ray make_primitive(long long x, long long y) {
    if (x == 0 && y == 0) throw InternalAssertion("primitive ray from zero vector");
    long long g = std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
    return {x / g, y / g};
}

long long cross2(const Ray& a, const Ray& b) {
    return a.first * b.second - a.second * b.first;
}

long long dot2(const Ray& a, const Ray& b) {
    return a.first * b.first + a.second * b.second;
}

// Angular position category measured counterclockwise from r:
// 0 same direction, 1 in (0,pi), 2 opposite, 3 in (pi,2pi).
int cat_from(const Ray& r, const Ray& p) {
    long long c = cross2(r, p);
    if (c > 0) return 1;
    if (c < 0) return 3;
    return dot2(r, p) > 0 ? 0 : 2;
}

// Strict angular order on [0,2pi) anchored at direction (1,0).
bool angle_less(const Ray& a, const Ray& b) {
    int ca = cat_from({1, 0}, a), cb = cat_from({1, 0}, b);
    if (ca != cb) return ca < cb;
    if (ca == 1 || ca == 3) return cross2(a, b) > 0;
    return false;
}

// d strictly inside the open sector running counterclockwise from r1 to
// r2. r1 == r2 means the full circle minus the ray r1.
bool strictly_between(const Ray& r1, const Ray& d, const Ray& r2) {
    int cd = cat_from(r1, d);
    if (cd == 0) return false;
    if (r1 == r2) return true;
    int c2 = cat_from(r1, r2);
    if (cd != c2) return cd < c2;
    if (cd == 1 || cd == 3) return cross2(d, r2) > 0;
    return false; // both opposite to r1, hence d is on r2
}

long long pair_ll(const Ray& theta, const DimVec& dims) {
    return theta.first * dims[0] + theta.second * dims[1];
}

bool proportional_dims(const DimVec& a, const DimVec& b) {
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<long long>(a[i]) * b[j] != static_cast<long long>(a[j]) * b[i])
                return false;
    return true;
}

std::vector<Rat> ray_to_theta(const Ray& r) {
    return {Rat(r.first), Rat(r.second)};
}

// Feasible rays of a rank-2 cone: the primitive directions s * w, with w
// spanning the equality line, that satisfy every inequality.
std::vector<Ray> cone_rays_rank2(const Cone& cone) {
    Ray w = make_primitive(cone.equality[1], -cone.equality[0]);
    std::vector<Ray> rays;
    for (int s : {1, -1}) {
        Ray r{s * w.first, s * w.second};
        bool ok = true;
        for (const auto& L : cone.inequalities)
            if (pair_ll(r, L) > 0) { ok = false; break; }
        if (ok) rays.push_back(r);
    }
    std::sort(rays.begin(), rays.end(), angle_less);
    return rays;
}

// Basis of the plane orthogonal to a nonzero integer vector m.
std::pair<std::vector<long long>, std::vector<long long>> plane_basis(const DimVec& m) {
    long long a = m[0], b = m[1], c = m[2];
    if (a == 0 && b == 0) return {{1, 0, 0}, {0, 1, 0}};
    std::vector<long long> u{b, -a, 0};
    std::vector<long long> v = (a != 0) ? std::vector<long long>{c, 0, -a}
                                        : std::vector<long long>{0, c, -b};
    return {u, v};
}

long long dot3(const std::vector<long long>& a, const DimVec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// In-plane constraint normals for a rank-3 cone: theta = x*u + y*v must
// satisfy (x,y) . c_L <= 0 for each listed class, inequalities from
// classes proportional to the equality being dropped.
std::vector<Ray> plane_constraints(const Cone& cone,
                                   const std::vector<long long>& u,
                                   const std::vector<long long>& v) {
    std::vector<Ray> cs;
    for (const auto& L : cone.inequalities) {
        if (proportional_dims(L, cone.equality)) continue;
        long long cu = dot3(u, L), cv = dot3(v, L);
        if (cu == 0 && cv == 0)
            throw InternalAssertion("orthogonal subobject class not proportional to the module class");
        Ray c = make_primitive(cu, cv);
        if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
    }
    return cs;
}

// Direction with strictly negative pairing against every constraint, if
// one exists. Candidate directions: rotations of the constraints and
// pairwise sums of those rotations cover every open feasibility sector.
bool strict_direction(const std::vector<Ray>& cs, Ray* out) {
    if (cs.empty()) {
        if (out) *out = {1, 0};
        return true;
    }
    std::vector<Ray> base;
    for (const auto& c : cs) {
        base.push_back({-c.first, -c.second});
        base.push_back({-c.second, c.first});
        base.push_back({c.second, -c.first});
    }
    std::vector<Ray> cands = base;
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i + 1; j < base.size(); ++j) {
            long long x = base[i].first + base[j].first;
            long long y = base[i].second + base[j].second;
            if (x != 0 || y != 0) cands.push_back(make_primitive(x, y));
        }
    for (const auto& d : cands) {
        bool ok = true;
        for (const auto& c : cs)
            if (dot2(c, d) >= 0) { ok = false; break; }
        if (ok) {
            if (out) *out = d;
            return true;
        }
    }
    return false;
}

// Canonical description of a rank-3 cone inside its plane: dimension,
// angular extreme rays, and whether the cone fills the whole plane.
struct PlaneShape {
    int dim = 0;
    bool whole_plane = false;
    std::vector<Ray> extremes;

    bool operator<(const PlaneShape& o) const {
        return std::tie(dim, whole_plane, extremes) <
               std::tie(o.dim, o.whole_plane, o.extremes);
    }
};

PlaneShape plane_shape(const std::vector<Ray>& cs) {
    PlaneShape shape;
    if (cs.empty()) {
        shape.dim = 2;
        shape.whole_plane = true;
        return shape;
    }
    std::set<Ray> feas;
    for (const auto& c : cs) {
        for (Ray d : {Ray{-c.second, c.first}, Ray{c.second, -c.first}}) {
            bool ok = true;
            for (const auto& c2 : cs)
                if (dot2(c2, d) > 0) { ok = false; break; }
            if (ok) feas.insert(make_primitive(d.first, d.second));
        }
    }
    bool interior = strict_direction(cs, nullptr);
    if (feas.empty()) {
        shape.dim = 0;
        return shape;
    }
    shape.dim = interior ? 2 : 1;
    // The feasible boundary candidates sit inside an arc of width at most
    // pi. The canonical extremes are the endpoints of that arc.
    std::vector<Ray> F(feas.begin(), feas.end());
    std::sort(F.begin(), F.end(), angle_less);
    for (const auto& f1 : F) {
        for (const auto& f2 : F) {
            long long c12 = cross2(f1, f2);
            if (c12 < 0) continue;
            if (c12 == 0 && dot2(f1, f2) > 0 && !(f1 == f2)) continue;
            bool covers = true;
            for (const auto& f : F) {
                if (!(cross2(f1, f) >= 0 && cross2(f, f2) >= 0)) { covers = false; break; }
            }
            if (covers) {
                shape.extremes = {f1};
                if (!(f2 == f1)) shape.extremes.push_back(f2);
                return shape;
            }
        }
    }
    throw InternalAssertion("feasible rays of a convex plane cone span more than a half turn");
}

} // namespace

Cone stability_space(const ModuleUniverse& U, int class_id) {
    Cone cone;
    const auto& info = U.cls(class_id);
    cone.ambient = static_cast<int>(info.dims.size());
    cone.equality = info.dims;
    std::set<DimVec> seen;
    for (int s : U.sub_class_ids(class_id)) {
        if (s == class_id) continue;
        const auto& d = U.cls(s).dims;
        if (seen.insert(d).second) cone.inequalities.push_back(d);
    }
    std::sort(cone.inequalities.begin(), cone.inequalities.end());
    return cone;
}

std::vector<std::pair<long long, long long>> wall_rays_rank2(const Cone& cone) {
    if (cone.ambient != 2) throw RankUnsupported("ray listing needs exactly two vertices");
    return cone_rays_rank2(cone);
}

bool cone_contains(const Cone& cone, const std::vector<Rat>& theta) {
    if (static_cast<int>(theta.size()) != cone.ambient)
        throw ValidationError("stability vector has the wrong length");
    if (dot(theta, cone.equality) != Rat(0)) return false;
    for (const auto& L : cone.inequalities)
        if (dot(theta, L) > Rat(0)) return false;
    return true;
}

bool is_wall(const Cone& cone, std::vector<Rat>* witness) {
    int n = cone.ambient;
    if (n > 3) throw RankUnsupported("wall test supports at most three vertices");
    if (n == 1) {
        // Every class is proportional to the module class, so the zero
        // vector satisfies the test vacuously.
        if (witness) *witness = {Rat(0)};
        return true;
    }
    if (n == 2) {
        Ray w = make_primitive(cone.equality[1], -cone.equality[0]);
        for (int s : {1, -1}) {
            Ray r{s * w.first, s * w.second};
            bool ok = true;
            for (const auto& L : cone.inequalities) {
                if (proportional_dims(L, cone.equality)) continue;
                if (pair_ll(r, L) >= 0) { ok = false; break; }
            }
            if (ok) {
                if (witness) *witness = ray_to_theta(r);
                return true;
            }
        }
        return false;
    }
    auto [u, v] = plane_basis(cone.equality);
    auto cs = plane_constraints(cone, u, v);
    Ray d;
    if (!strict_direction(cs, &d)) return false;
    if (witness) {
        witness->assign(3, Rat(0));
        for (int i = 0; i < 3; ++i)
            (*witness)[i] = Rat(d.first * u[i] + d.second * v[i]);
    }
    return true;
}

std::vector<Wall> enumerate_walls(const ModuleUniverse& U) {
    int n = U.algebra().vertex_count;
    if (n > 3) throw RankUnsupported("wall enumeration supports at most three vertices");

    // Geometry key: equality direction plus the canonical in-plane shape.
    using Key = std::tuple<DimVec, std::vector<Ray>, PlaneShape>;
    std::map<Key, Wall> groups;
    std::vector<Key> order;

    for (int id : U.indec_ids()) {
        Cone cone = stability_space(U, id);
        if (!is_wall(cone)) continue;
        DimVec prim = cone.equality;
        int g = 0;
        for (int x : prim) g = std::gcd(g, x);
        for (int& x : prim) x /= g;

        std::vector<Ray> rays2;
        PlaneShape shape3;
        if (n == 2) {
            rays2 = cone_rays_rank2(cone);
        } else if (n == 3) {
            auto [u, v] = plane_basis(cone.equality);
            shape3 = plane_shape(plane_constraints(cone, u, v));
        }
        Key key{prim, rays2, shape3};
        auto it = groups.find(key);
        if (it == groups.end()) {
            groups.emplace(key, Wall{cone, {id}});
            order.push_back(key);
        } else {
            it->second.class_ids.push_back(id);
        }
    }
    std::vector<Wall> walls;
    for (const auto& key : order) walls.push_back(groups.at(key));
    return walls;
}

std::vector<Chamber> chambers_rank2(const ModuleUniverse& U) {
    if (U.algebra().vertex_count != 2)
        throw RankUnsupported("chamber enumeration supports exactly two vertices");

    std::set<Ray> rayset;
    for (int id : U.indec_ids())
        for (const auto& r : cone_rays_rank2(stability_space(U, id)))
            rayset.insert(r);

    std::vector<Chamber> chambers;
    auto sample_between = [](const Ray& r1, const Ray& r2) -> Ray {
        Ray sum{r1.first + r2.first, r1.second + r2.second};
        if ((sum.first != 0 || sum.second != 0) && strictly_between(r1, sum, r2))
            return make_primitive(sum.first, sum.second);
        Ray rot{-r1.second, r1.first};
        if (strictly_between(r1, rot, r2)) return rot;
        throw InternalAssertion("no sample direction inside chamber sector");
    };

    if (rayset.empty()) {
        Chamber c;
        c.sample = {Rat(1), Rat(0)};
        chambers.push_back(c);
        return chambers;
    }
    std::vector<Ray> rays(rayset.begin(), rayset.end());
    std::sort(rays.begin(), rays.end(), angle_less);
    int k = static_cast<int>(rays.size());
    for (int i = 0; i < k; ++i) {
        const Ray& r1 = rays[i];
        const Ray& r2 = rays[(i + 1) % k];
        Chamber c;
        c.from_ray = ray_to_theta(r1);
        c.to_ray = ray_to_theta(r2);
        c.sample = ray_to_theta(sample_between(r1, r2));
        chambers.push_back(c);
    }
    return chambers;
}

PathReport validate_red_path(const ModuleUniverse& U, const RedPath& path) {
    PathReport report;
    try {
        validate_red_path_shape(path, U.algebra().vertex_count);
    } catch (const Error& e) {
        report.violations.push_back(e.what());
        return report;
    }

    int nclasses = U.class_count();
    std::map<Rat, std::vector<int>> by_time;
    std::vector<Rat> cross_time(nclasses, Rat(-1));
    std::vector<bool> has_time(nclasses, false);

    for (int id = 0; id < nclasses; ++id) {
        const auto& info = U.cls(id);
        PairingRoots roots = pairing_roots(path, info.dims);
        if (roots.has_interval_zero) {
            std::ostringstream os;
            os << "pairing with " << info.name << " vanishes on ["
               << rat_to_string(roots.interval_begin) << ", "
               << rat_to_string(roots.interval_end) << "]";
            report.violations.push_back(os.str());
            continue;
        }
        if (roots.zeros.size() != 1) {
            std::ostringstream os;
            os << "pairing with " << info.name << " has " << roots.zeros.size()
               << " zeros, expected exactly one";
            report.violations.push_back(os.str());
            continue;
        }
        Rat t = roots.zeros[0];
        if (t == Rat(0) || t == Rat(1)) {
            report.violations.push_back("pairing with " + info.name +
                                        " vanishes at an endpoint of the path");
            continue;
        }
        cross_time[id] = t;
        has_time[id] = true;
        by_time[t].push_back(id);
    }

    for (const auto& [t, ids] : by_time) report.crossings.push_back({t, ids});
    report.valid = report.violations.empty();

    // Sign pattern: positive pairing before the crossing, negative after.
    for (int id = 0; id < nclasses; ++id) {
        if (!has_time[id]) continue;
        const auto& info = U.cls(id);
        std::vector<Rat> probes = path.times;
        for (size_t i = 0; i + 1 < path.times.size(); ++i)
            probes.push_back((path.times[i] + path.times[i + 1]) / 2);
        for (const Rat& t : probes) {
            Rat v = dot(path_eval(path, t), info.dims);
            bool bad = (t < cross_time[id] && v <= Rat(0)) ||
                       (t > cross_time[id] && v >= Rat(0)) ||
                       (t == cross_time[id] && v != Rat(0));
            if (bad) {
                report.violations.push_back("pairing with " + info.name +
                                            " does not change sign exactly once");
                report.valid = false;
                break;
            }
        }
    }

    // Genericity. Condition one: the endpoints avoid every stability space.
    bool generic = true;
    std::vector<Cone> cones;
    cones.reserve(nclasses);
    for (int id = 0; id < nclasses; ++id) cones.push_back(stability_space(U, id));
    for (const Rat& t : {Rat(0), Rat(1)}) {
        auto theta = path_eval(path, t);
        for (int id = 0; id < nclasses; ++id) {
            if (cone_contains(cones[id], theta)) {
                generic = false;
                report.dgeneric_notes.push_back(
                    "endpoint at t=" + rat_to_string(t) +
                    " lies on the stability space of " + U.cls(id).name);
            }
        }
    }

    // Condition two: classes meeting a shared wall point must be
    // proportional.
    for (const auto& crossing : report.crossings) {
        auto theta = path_eval(path, crossing.t);
        std::vector<int> on_wall;
        for (int id : crossing.class_ids)
            if (cone_contains(cones[id], theta)) on_wall.push_back(id);
        for (size_t i = 0; i < on_wall.size(); ++i)
            for (size_t j = i + 1; j < on_wall.size(); ++j) {
                const auto& a = U.cls(on_wall[i]);
                const auto& b = U.cls(on_wall[j]);
                if (!proportional_dims(a.dims, b.dims)) {
                    generic = false;
                    report.dgeneric_notes.push_back(
                        "at t=" + rat_to_string(crossing.t) + " the classes " +
                        a.name + " and " + b.name +
                        " share a wall point but are not proportional");
                }
            }
    }

    // Condition three, piecewise linear form: the segment through each
    // crossing must not be level for that class. A valid path already
    // guarantees this; report it for completeness.
    bool level = false;
    for (int id = 0; id < nclasses; ++id) {
        if (!has_time[id]) continue;
        for (size_t i = 0; i + 1 < path.times.size(); ++i) {
            if (cross_time[id] < path.times[i] || cross_time[id] > path.times[i + 1]) continue;
            std::vector<Rat> dir(path.dim());
            for (int k = 0; k < path.dim(); ++k)
                dir[k] = path.points[i + 1][k] - path.points[i][k];
            if (dot(dir, U.cls(id).dims) == Rat(0)) {
                level = true;
                report.dgeneric_notes.push_back(
                    "segment through the crossing of " + U.cls(id).name + " is level");
            }
        }
    }
    if (!level)
        report.dgeneric_notes.push_back(
            "every crossing segment moves strictly across its wall");

    report.dgeneric = report.valid && generic && !level;
    return report;
}

ModuleSet bridgeland_torsion(const ModuleUniverse& U, const std::vector<Rat>& theta) {
    if (static_cast<int>(theta.size()) != U.algebra().vertex_count)
        throw ValidationError("stability vector has the wrong length");
    ModuleSet set;
    for (int id : U.indec_ids()) {
        bool in = true;
        for (int q : U.quot_class_ids(id))
            if (dot(theta, U.cls(q).dims) < Rat(0)) { in = false; break; }
        if (in) set.ids.push_back(id);
    }
    std::sort(set.ids.begin(), set.ids.end());
    return set;
}

bool verify_redtorsion(const StabilityFunction& path_sf, const ModuleUniverse& U,
                       const Rat& t, std::string* why) {
    if (path_sf.kind() != StabilityFunction::Kind::Path)
        throw ValidationError("redtorsion check needs a path stability function");
    ModuleSet via_phase = torsion_class_at(path_sf, U, PhaseValue::finite(t));
    ModuleSet via_theta = bridgeland_torsion(U, path_eval(path_sf.path(), t));
    if (via_phase.ids == via_theta.ids) return true;
    if (why) {
        std::ostringstream os;
        os << "phase side {";
        for (int id : via_phase.ids) os << " " << U.cls(id).name;
        os << " } vs stability side {";
        for (int id : via_theta.ids) os << " " << U.cls(id).name;
        os << " }";
        *why = os.str();
    }
    return false;
}

} // namespace qstab
