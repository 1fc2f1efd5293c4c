#pragma once

#include <string>

#include "qstab/errors.hpp"
#include "qstab/rational.hpp"

namespace qstab {

// Element of the totally ordered phase set: rationals extended by +infinity,
// each refined by an integer tag compared lexicographically after the value.
// Tag 0 is the plain rational; a negative tag sits immediately below it.
// Text form: "3/4", "3/4*1", "1*-1", "inf".
struct PhaseValue {
    bool infinite = false;
    Rat value = Rat(0);
    int tag = 0;

    static PhaseValue infinity(int tag = 0) {
        PhaseValue p;
        p.infinite = true;
        p.tag = tag;
        return p;
    }
    static PhaseValue finite(const Rat& v, int tag = 0) {
        PhaseValue p;
        p.value = v;
        p.tag = tag;
        return p;
    }
};

inline int phase_cmp(const PhaseValue& a, const PhaseValue& b) {
    if (a.infinite != b.infinite) return a.infinite ? 1 : -1;
    if (!a.infinite) {
        if (a.value < b.value) return -1;
        if (b.value < a.value) return 1;
    }
    if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
    return 0;
}

inline bool operator<(const PhaseValue& a, const PhaseValue& b) { return phase_cmp(a, b) < 0; }
inline bool operator>(const PhaseValue& a, const PhaseValue& b) { return phase_cmp(a, b) > 0; }
inline bool operator<=(const PhaseValue& a, const PhaseValue& b) { return phase_cmp(a, b) <= 0; }
inline bool operator>=(const PhaseValue& a, const PhaseValue& b) { return phase_cmp(a, b) >= 0; }
inline bool operator==(const PhaseValue& a, const PhaseValue& b) { return phase_cmp(a, b) == 0; }
inline bool operator!=(const PhaseValue& a, const PhaseValue& b) { return phase_cmp(a, b) != 0; }

inline std::string phase_to_string(const PhaseValue& p) {
    std::string s = p.infinite ? "inf" : rat_to_string(p.value);
    if (p.tag != 0) s += "*" + std::to_string(p.tag);
    return s;
}

inline PhaseValue parse_phase(const std::string& text) {
    std::string base = text;
    int tag = 0;
    std::size_t star = text.find('*');
    if (star != std::string::npos) {
        base = text.substr(0, star);
        std::string t = text.substr(star + 1);
        if (t.empty()) throw ParseError("empty phase tag in '" + text + "'");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw ParseError("bad phase tag in '" + text + "'");
        for (std::size_t j = i; j < t.size(); ++j)
            if (t[j] < '0' || t[j] > '9') throw ParseError("bad phase tag in '" + text + "'");
        tag = std::stoi(t);
    }
    if (base == "inf") return PhaseValue::infinity(tag);
    return PhaseValue::finite(rat_from_string(base), tag);
}

} // namespace qstab
