#include "qstab/svg.hpp"

#include <algorithm>
#include <sstream>

#include "qstab/errors.hpp"

namespace qstab {

namespace {

using Ray = std::pair<long long, long long>;

long long cross2(const Ray& a, const Ray& b) {
    return a.first * b.second - a.second * b.first;
}

int cat_from(const Ray& r, const Ray& p) {
    long long c = cross2(r, p);
    if (c > 0) return 1;
    if (c < 0) return 3;
    return (r.first * p.first + r.second * p.second) > 0 ? 0 : 2;
}

bool strictly_between(const Ray& r1, const Ray& d, const Ray& r2) {
    int cd = cat_from(r1, d);
    if (cd == 0) return false;
    if (r1 == r2) return true;
    int c2 = cat_from(r1, r2);
    if (cd != c2) return cd < c2;
    if (cd == 1 || cd == 3) return cross2(d, r2) > 0;
    return false;
}

// Pixel coordinates of a point of [-2,2]^2, y flipped.
std::string px(const Rat& x) { return rat_to_decimal((x + 2) * 100, 6); }
std::string py(const Rat& y) { return rat_to_decimal((Rat(2) - y) * 100, 6); }

std::string pt(const Rat& x, const Rat& y) { return px(x) + "," + py(y); }

// Point where the ray from the origin leaves the square.
std::pair<Rat, Rat> box_exit(const Ray& r) {
    long long m = std::max(r.first < 0 ? -r.first : r.first,
                           r.second < 0 ? -r.second : r.second);
    Rat t(2, m);
    return {t * r.first, t * r.second};
}

Ray to_ray(const std::vector<Rat>& v) {
    // Chamber rays come out of wall geometry as integer vectors.
    return {v[0].numerator() / v[0].denominator(), v[1].numerator() / v[1].denominator()};
}

const char* kPalette[] = {"#f3e6d2", "#d9e9f5", "#e2f2d9", "#f5dcdc", "#e8dcf5",
                          "#f5f0d2", "#d7f2e9", "#f2dcea", "#e0e4f2", "#eef2d7"};

} // namespace

std::string render_svg(const ModuleUniverse& U, const RedPath* path) {
    if (U.algebra().vertex_count != 2)
        throw RankUnsupported("rendering supports exactly two vertices");

    auto walls = enumerate_walls(U);
    auto chambers = chambers_rank2(U);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
           "viewBox=\"0 0 400 400\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"#ffffff\"/>\n";

    // Shade the chambers; only meaningful once some wall exists.
    if (!walls.empty()) {
        static const Ray corners[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        int color = 0;
        for (const auto& c : chambers) {
            if (c.from_ray.empty()) continue;
            Ray r1 = to_ray(c.from_ray), r2 = to_ray(c.to_ray);
            std::vector<Ray> between;
            for (const auto& corner : corners)
                if (strictly_between(r1, corner, r2)) between.push_back(corner);
            std::sort(between.begin(), between.end(), [&](const Ray& a, const Ray& b) {
                int ca = cat_from(r1, a), cb = cat_from(r1, b);
                if (ca != cb) return ca < cb;
                return cross2(a, b) > 0;
            });
            auto [x1, y1] = box_exit(r1);
            auto [x2, y2] = box_exit(r2);
            svg << "  <polygon points=\"" << pt(Rat(0), Rat(0)) << " " << pt(x1, y1);
            for (const auto& corner : between) {
                auto [cx, cy] = box_exit(corner);
                svg << " " << pt(cx, cy);
            }
            svg << " " << pt(x2, y2) << "\" fill=\"" << kPalette[color % 10]
                << "\" stroke=\"none\"/>\n";
            ++color;
        }
    }

    svg << "  <line x1=\"" << px(Rat(-2)) << "\" y1=\"" << py(Rat(0)) << "\" x2=\""
        << px(Rat(2)) << "\" y2=\"" << py(Rat(0))
        << "\" stroke=\"#c8c8c8\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << px(Rat(0)) << "\" y1=\"" << py(Rat(-2)) << "\" x2=\""
        << px(Rat(0)) << "\" y2=\"" << py(Rat(2))
        << "\" stroke=\"#c8c8c8\" stroke-width=\"1\"/>\n";

    for (const auto& w : walls) {
        std::string names;
        for (std::size_t i = 0; i < w.class_ids.size(); ++i) {
            if (i) names += ",";
            names += U.cls(w.class_ids[i]).name;
        }
        // One primitive per wall: a full line when both rays survive, a
        // ray from the origin otherwise.
        auto rays = wall_rays_rank2(w.cone);
        auto [x2, y2] = box_exit(rays[0]);
        auto [x1, y1] = rays.size() == 2 ? box_exit(rays[1])
                                         : std::pair<Rat, Rat>{Rat(0), Rat(0)};
        svg << "  <line x1=\"" << px(x1) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(x2)
            << "\" y2=\"" << py(y2) << "\" stroke=\"#3a3a3a\" stroke-width=\"2\"><title>"
            << names << "</title></line>\n";
    }

    if (path) {
        svg << "  <polyline points=\"";
        for (std::size_t i = 0; i < path->points.size(); ++i) {
            if (i) svg << " ";
            svg << pt(path->points[i][0], path->points[i][1]);
        }
        svg << "\" fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"2.5\"/>\n";

        PathReport report = validate_red_path(U, *path);
        for (const auto& crossing : report.crossings) {
            auto theta = path_eval(*path, crossing.t);
            std::string names;
            for (std::size_t i = 0; i < crossing.class_ids.size(); ++i) {
                if (i) names += ",";
                names += U.cls(crossing.class_ids[i]).name;
            }
            svg << "  <circle cx=\"" << px(theta[0]) << "\" cy=\"" << py(theta[1])
                << "\" r=\"4.5\" fill=\"#c0392b\"/>\n";
            svg << "  <text x=\"" << rat_to_decimal((theta[0] + 2) * 100 + 7, 6)
                << "\" y=\"" << rat_to_decimal((Rat(2) - theta[1]) * 100 - 7, 6)
                << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#c0392b\">"
                << names << " (t=" << rat_to_string(crossing.t) << ")</text>\n";
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace qstab
