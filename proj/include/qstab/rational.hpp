#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "qstab/errors.hpp"

namespace qstab {

using Rat = boost::rational<long long>;

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p" or "p/q" with optional leading minus on p; q > 0 after parsing.
inline Rat rat_from_string(const std::string& s) {
    auto bad = [&]() -> ParseError {
        return ParseError("not a rational: '" + s + "'");
    };
    if (s.empty()) throw bad();
    std::size_t slash = s.find('/');
    auto parse_int = [&](const std::string& t) -> long long {
        if (t.empty()) throw bad();
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) throw bad();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw bad();
        try {
            return std::stoll(t);
        } catch (const std::exception&) {
            throw bad();
        }
    };
    if (slash == std::string::npos) return Rat(parse_int(s));
    long long num = parse_int(s.substr(0, slash));
    long long den = parse_int(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rat(num, den);
}

// Decimal expansion rounded half away from zero to `digits` places, for SVG
// output. Exact: works on the integer value r * 10^digits.
inline std::string rat_to_decimal(const Rat& r, int digits) {
    long long scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rat scaled = r * scale;
    long long n = scaled.numerator();
    long long d = scaled.denominator();
    bool neg = (n < 0);
    if (neg) n = -n;
    long long q = n / d;
    long long rem = n % d;
    if (2 * rem >= d) ++q;
    long long whole = q / scale;
    long long frac = q % scale;
    std::string out = neg && (whole != 0 || frac != 0) ? "-" : "";
    out += std::to_string(whole);
    if (digits > 0) {
        std::string f = std::to_string(frac);
        out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
}

// <v, m> with v rational and m an integer vector (dimension vector pairing).
inline Rat dot(const std::vector<Rat>& v, const std::vector<int>& m) {
    if (v.size() != m.size())
        throw InternalAssertion("dot: length mismatch");
    Rat acc(0);
    for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * m[i];
    return acc;
}

inline long long dot(const std::vector<long long>& v, const std::vector<int>& m) {
    if (v.size() != m.size())
        throw InternalAssertion("dot: length mismatch");
    long long acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * m[i];
    return acc;
}

} // namespace qstab
