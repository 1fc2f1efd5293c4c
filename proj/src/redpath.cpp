#include "qstab/redpath.hpp"

#include <sstream>

namespace qstab {

RedPath parse_red_path(const std::string& text) {
    RedPath path;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream line(raw);
        std::vector<std::string> toks;
        std::string tok;
        while (line >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (toks.size() < 2)
            throw ParseError("line " + std::to_string(lineno) +
                             ": breakpoint needs a time and at least one coordinate");
        std::vector<Rat> vals;
        for (const std::string& t : toks) {
            try {
                vals.push_back(rat_from_string(t));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        path.times.push_back(vals[0]);
        path.points.push_back(std::vector<Rat>(vals.begin() + 1, vals.end()));
    }
    return path;
}

void validate_red_path_shape(const RedPath& path, int n) {
    if (path.times.size() < 2) throw InvalidPath("a path needs at least two breakpoints");
    for (const auto& pt : path.points)
        if (static_cast<int>(pt.size()) != n)
            throw InvalidPath("breakpoint has " + std::to_string(pt.size()) +
                              " coordinates, expected " + std::to_string(n));
    for (std::size_t i = 0; i + 1 < path.times.size(); ++i)
        if (!(path.times[i] < path.times[i + 1]))
            throw InvalidPath("breakpoint times must be strictly increasing");
    if (path.times.front() != Rat(0) || path.times.back() != Rat(1))
        throw InvalidPath("path must start at t=0 and end at t=1");
    for (const Rat& x : path.points.front())
        if (x != Rat(1)) throw InvalidPath("path must start at the all-ones point");
    for (const Rat& x : path.points.back())
        if (x != Rat(-1)) throw InvalidPath("path must end at the all-minus-ones point");
}

std::vector<Rat> path_eval(const RedPath& path, const Rat& t) {
    if (t < path.times.front() || path.times.back() < t)
        throw InvalidPath("evaluation time outside [0,1]");
    std::size_t i = 0;
    while (i + 2 < path.times.size() && path.times[i + 1] < t) ++i;
    if (t == path.times[i]) return path.points[i];
    const Rat span = path.times[i + 1] - path.times[i];
    const Rat s = (t - path.times[i]) / span;
    std::vector<Rat> out(path.points[i].size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = path.points[i][k] + s * (path.points[i + 1][k] - path.points[i][k]);
    return out;
}

PairingRoots pairing_roots(const RedPath& path, const DimVec& m) {
    PairingRoots out;
    std::vector<Rat> v(path.times.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = dot(path.points[i], m);

    auto push_zero = [&](const Rat& t) {
        if (out.zeros.empty() || out.zeros.back() != t) out.zeros.push_back(t);
    };

    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] == Rat(0)) {
            push_zero(path.times[i]);
            if (v[i + 1] == Rat(0) && !out.has_interval_zero) {
                out.has_interval_zero = true;
                out.interval_begin = path.times[i];
                out.interval_end = path.times[i + 1];
            }
            continue;
        }
        bool pos = Rat(0) < v[i];
        bool next_neg = v[i + 1] < Rat(0);
        bool next_pos = Rat(0) < v[i + 1];
        if ((pos && next_neg) || (!pos && next_pos)) {
            Rat t = path.times[i] +
                    (path.times[i + 1] - path.times[i]) * v[i] / (v[i] - v[i + 1]);
            push_zero(t);
        }
    }
    if (v.back() == Rat(0)) push_zero(path.times.back());
    return out;
}

Rat crossing_time(const RedPath& path, const DimVec& m) {
    PairingRoots roots = pairing_roots(path, m);
    auto dims_str = [&]() {
        std::string s = "(";
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(m[i]);
        }
        return s + ")";
    };
    if (roots.has_interval_zero)
        throw InvalidPath("pairing with dimension vector " + dims_str() +
                          " vanishes on the interval [" + rat_to_string(roots.interval_begin) +
                          ", " + rat_to_string(roots.interval_end) + "]");
    if (roots.zeros.size() != 1)
        throw InvalidPath("pairing with dimension vector " + dims_str() + " has " +
                          std::to_string(roots.zeros.size()) + " zeros, expected exactly one");
    if (roots.zeros[0] == Rat(0) || roots.zeros[0] == Rat(1))
        throw InvalidPath("pairing with dimension vector " + dims_str() +
                          " vanishes at a path endpoint");
    return roots.zeros[0];
}

std::string red_path_to_text(const RedPath& path) {
    std::ostringstream os;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        os << rat_to_string(path.times[i]);
        for (const Rat& x : path.points[i]) os << " " << rat_to_string(x);
        os << "\n";
    }
    return os.str();
}

} // namespace qstab
