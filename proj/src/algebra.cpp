#include "qstab/algebra.hpp"

#include <cctype>
#include <sstream>

#include "qstab/fp.hpp"

namespace qstab {

int AlgebraSpec::arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

struct Token {
    std::string text;
    int line = 0;
    int column = 0;
};

[[noreturn]] void fail_at(int line, int column, const std::string& what) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << what;
    throw ParseError(os.str());
}

std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] == '#') break;
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
                   raw[i] != '#')
                ++i;
            toks.push_back({raw.substr(start, i - start), lineno,
                            static_cast<int>(start) + 1});
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

long long parse_int(const Token& tok) {
    const std::string& s = tok.text;
    std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) fail_at(tok.line, tok.column, "expected an integer, got '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            fail_at(tok.line, tok.column, "expected an integer, got '" + s + "'");
    return std::stoll(s);
}

// One relation term: "coeff*arrow.arrow...". The coefficient prefix is
// optional and defaults to 1.
RelationTerm parse_term(const std::string& term, const Token& where,
                        const AlgebraSpec& alg) {
    RelationTerm out;
    std::string path = term;
    std::size_t star = term.find('*');
    if (star != std::string::npos) {
        std::string coeff = term.substr(0, star);
        if (coeff.empty()) fail_at(where.line, where.column, "empty coefficient in '" + term + "'");
        for (char c : coeff)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail_at(where.line, where.column, "bad coefficient '" + coeff + "'");
        out.coeff = static_cast<uint32_t>(std::stoull(coeff) % alg.p);
        path = term.substr(star + 1);
    }
    if (path.empty()) fail_at(where.line, where.column, "empty path in '" + term + "'");
    std::size_t i = 0;
    while (i <= path.size()) {
        std::size_t dot = path.find('.', i);
        std::string name = path.substr(i, (dot == std::string::npos ? path.size() : dot) - i);
        if (name.empty()) fail_at(where.line, where.column, "empty arrow name in '" + term + "'");
        int idx = alg.arrow_index(name);
        if (idx < 0)
            throw ValidationError("relation uses unknown arrow '" + name + "'");
        out.arrows.push_back(idx);
        if (dot == std::string::npos) break;
        i = dot + 1;
    }
    return out;
}

void validate_relation(const Relation& rel, const AlgebraSpec& alg) {
    if (rel.terms.empty()) throw ValidationError("relation has no terms");
    bool first = true;
    int src = 0, tgt = 0;
    for (const RelationTerm& t : rel.terms) {
        if (t.arrows.size() < 2)
            throw ValidationError("relation path has length < 2; relations must be admissible");
        for (std::size_t j = 0; j + 1 < t.arrows.size(); ++j) {
            const Arrow& a = alg.arrows[t.arrows[j]];
            const Arrow& b = alg.arrows[t.arrows[j + 1]];
            if (a.target != b.source)
                throw ValidationError("non-composable path: arrow '" + a.name +
                                      "' ends at vertex " + std::to_string(a.target + 1) +
                                      " but '" + b.name + "' starts at vertex " +
                                      std::to_string(b.source + 1));
        }
        int s = alg.arrows[t.arrows.front()].source;
        int e = alg.arrows[t.arrows.back()].target;
        if (first) {
            src = s;
            tgt = e;
            first = false;
        } else if (s != src || e != tgt) {
            throw ValidationError("relation terms do not share source and target");
        }
    }
}

} // namespace

AlgebraSpec parse_algebra(const std::string& text) {
    AlgebraSpec alg;
    bool saw_field = false, saw_vertices = false;
    std::vector<std::pair<std::vector<Token>, int>> relation_lines;

    for (const auto& toks : tokenize_lines(text)) {
        const Token& head = toks[0];
        if (head.text == "field") {
            if (toks.size() != 2)
                fail_at(head.line, head.column, "expected 'field p=<prime>'");
            const Token& t = toks[1];
            if (t.text.rfind("p=", 0) != 0)
                fail_at(t.line, t.column, "expected 'p=<prime>', got '" + t.text + "'");
            Token num{t.text.substr(2), t.line, t.column + 2};
            long long p = parse_int(num);
            if (p < 2) fail_at(num.line, num.column, "field size must be at least 2");
            alg.p = static_cast<uint32_t>(p);
            saw_field = true;
        } else if (head.text == "vertices") {
            if (toks.size() != 2)
                fail_at(head.line, head.column, "expected 'vertices <count>'");
            long long n = parse_int(toks[1]);
            if (n < 1) fail_at(toks[1].line, toks[1].column, "vertex count must be positive");
            alg.vertex_count = static_cast<int>(n);
            saw_vertices = true;
        } else if (head.text == "arrow") {
            if (toks.size() != 4)
                fail_at(head.line, head.column, "expected 'arrow <name> <source> <target>'");
            Arrow a;
            a.name = toks[1].text;
            a.source = static_cast<int>(parse_int(toks[2])) - 1;
            a.target = static_cast<int>(parse_int(toks[3])) - 1;
            if (alg.arrow_index(a.name) >= 0)
                throw ValidationError("duplicate arrow name '" + a.name + "'");
            alg.arrows.push_back(std::move(a));
        } else if (head.text == "relation") {
            if (toks.size() < 2)
                fail_at(head.line, head.column, "relation needs an expression");
            relation_lines.push_back({toks, 0});
        } else {
            fail_at(head.line, head.column, "unknown directive '" + head.text + "'");
        }
    }

    if (!saw_vertices) throw ValidationError("missing 'vertices' line");
    if (!saw_field) alg.p = 2;
    if (!is_prime(alg.p)) throw ValidationError("field size " + std::to_string(alg.p) + " is not prime");
    for (const Arrow& a : alg.arrows) {
        if (a.source < 0 || a.source >= alg.vertex_count || a.target < 0 ||
            a.target >= alg.vertex_count)
            throw ValidationError("arrow '" + a.name + "' references a vertex outside 1.." +
                                  std::to_string(alg.vertex_count));
    }

    for (auto& [toks, unused] : relation_lines) {
        (void)unused;
        // Glue the expression tokens back together, then split on '+'.
        std::string expr;
        for (std::size_t i = 1; i < toks.size(); ++i) expr += toks[i].text;
        Relation rel;
        std::size_t i = 0;
        while (i <= expr.size()) {
            std::size_t plus = expr.find('+', i);
            std::string term = expr.substr(i, (plus == std::string::npos ? expr.size() : plus) - i);
            if (term.empty()) fail_at(toks[0].line, toks[0].column, "empty relation term");
            rel.terms.push_back(parse_term(term, toks[1], alg));
            if (plus == std::string::npos) break;
            i = plus + 1;
        }
        validate_relation(rel, alg);
        rel.source = alg.arrows[rel.terms[0].arrows.front()].source;
        rel.target = alg.arrows[rel.terms[0].arrows.back()].target;
        alg.relations.push_back(std::move(rel));
    }

    return alg;
}

std::string algebra_to_text(const AlgebraSpec& alg) {
    std::ostringstream os;
    os << "field p=" << alg.p << "\n";
    os << "vertices " << alg.vertex_count << "\n";
    for (const Arrow& a : alg.arrows)
        os << "arrow " << a.name << " " << a.source + 1 << " " << a.target + 1 << "\n";
    for (const Relation& r : alg.relations) {
        os << "relation ";
        for (std::size_t i = 0; i < r.terms.size(); ++i) {
            if (i) os << " + ";
            os << r.terms[i].coeff << "*";
            for (std::size_t j = 0; j < r.terms[i].arrows.size(); ++j) {
                if (j) os << ".";
                os << alg.arrows[r.terms[i].arrows[j]].name;
            }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace qstab
