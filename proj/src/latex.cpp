#include "eckhaus/latex.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "eckhaus/errors.hpp"

namespace eckhaus::cas {

namespace {

std::string rational_str(const mpq_class& q) {
    mpq_class v = abs(q);
    if (v.get_den() == 1) return v.get_num().get_str();
    return "\\frac{" + v.get_num().get_str() + "}{" + v.get_den().get_str() + "}";
}

// one signed part like "3/4 sqrt3 i": kind 0 = rational, 1 = sqrt3, 2 = i, 3 = sqrt3 i
std::string part_str(const mpq_class& q, int kind) {
    static const char* suffix[] = {"", "\\sqrt{3}", "i", "\\sqrt{3} i"};
    const bool unit = (abs(q) == 1) && kind != 0;
    std::string s = unit ? "" : rational_str(q);
    if (kind != 0) {
        if (!s.empty()) s += " ";
        s += suffix[kind];
    }
    return s;
}

// number of nonzero components and the single (value, kind) when unique
int decompose(const ExactScalar& v, mpq_class& q, int& kind) {
    int count = 0;
    if (v.a() != 0) ++count, q = v.a(), kind = 0;
    if (v.b() != 0) ++count, q = v.b(), kind = 1;
    if (v.c() != 0) ++count, q = v.c(), kind = 2;
    if (v.d() != 0) ++count, q = v.d(), kind = 3;
    return count;
}

std::string base_str(SymbolBase b) {
    switch (b) {
        case SymbolBase::Vc: return "V_c";
        case SymbolBase::Vs: return "V_s";
        case SymbolBase::Wc: return "W_c";
        case SymbolBase::Ws: return "W_s";
    }
    return "?";
}

std::string symbol_str(const GradedSymbol& s) {
    if (s.deriv == 0) return base_str(s.base);
    if (s.deriv == 1) return "\\partial " + base_str(s.base);
    return "\\partial^{" + std::to_string(s.deriv) + "} " + base_str(s.base);
}

std::string monomial_str(const Monomial& m) {
    std::string out;
    size_t i = 0;
    while (i < m.size()) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        const int power = static_cast<int>(j - i);
        std::string sym = symbol_str(m[i]);
        if (!out.empty()) out += " ";
        if (power == 1) {
            out += sym;
        } else if (m[i].deriv == 0) {
            out += sym + "^{" + std::to_string(power) + "}";
        } else {
            out += "(" + sym + ")^{" + std::to_string(power) + "}";
        }
        i = j;
    }
    return out;
}

// coefficient text without its leading sign; sign returned separately when
// it is well defined (single-part coefficients); mixed coefficients are
// emitted as a parenthesized sum with '+' outside.
std::pair<std::string, int> coeff_str(const ExactScalar& v, bool lonely) {
    mpq_class q;
    int kind = 0;
    const int parts = decompose(v, q, kind);
    if (parts == 1) {
        const int sign = sgn(q) < 0 ? -1 : 1;
        std::string s = part_str(q, kind);
        if (s.empty() && lonely) s = "1";
        return {s, sign};
    }
    std::string s = "\\left(";
    bool first = true;
    const mpq_class comps[4] = {v.a(), v.b(), v.c(), v.d()};
    for (int k = 0; k < 4; ++k) {
        if (comps[k] == 0) continue;
        std::string ps = part_str(comps[k], k);
        if (ps.empty()) ps = "1";
        if (first) {
            if (sgn(comps[k]) < 0) s += "-";
            first = false;
        } else {
            s += sgn(comps[k]) < 0 ? " - " : " + ";
        }
        s += ps;
    }
    s += "\\right)";
    return {s, 1};
}

}  // namespace

std::string emit_latex(const GradedPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        auto [cs, sign] = coeff_str(c, m.empty());
        if (first) {
            if (sign < 0) out += "-";
            first = false;
        } else {
            out += sign < 0 ? " - " : " + ";
        }
        std::string body = cs;
        if (!m.empty()) {
            if (!body.empty()) body += " ";
            body += monomial_str(m);
        }
        out += body;
    }
    return out;
}

namespace {

// ---- parser ----------------------------------------------------------

struct Lexer {
    std::string s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    bool accept(const std::string& tok) {
        skip_ws();
        if (s.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        if (!accept(tok)) throw ConfigError("parse_latex: expected '" + tok + "' at " + rest());
    }
    bool peek_digit() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ConfigError("parse_latex: expected integer at " + rest());
        return std::stol(s.substr(start, pos - start));
    }
    std::string rest() { return "'" + s.substr(pos, 24) + "'"; }
};

long braced_integer(Lexer& lx) {
    lx.expect("{");
    long v = lx.integer();
    lx.expect("}");
    return v;
}

// rational magnitude, sqrt3 and i markers: one signed "part"
ExactScalar parse_part(Lexer& lx, bool negative) {
    mpq_class mag(1);
    bool have_mag = false;
    if (lx.accept("\\frac")) {
        const long num = braced_integer(lx);
        const long den = braced_integer(lx);
        mag = mpq_class(num, den);
        mag.canonicalize();
        have_mag = true;
    } else if (lx.peek_digit()) {
        mag = lx.integer();
        have_mag = true;
    }
    bool sqrt3 = lx.accept("\\sqrt{3}");
    // a bare 'i' is unambiguous: no other token starts with it
    bool imag = false;
    lx.skip_ws();
    if (lx.pos < lx.s.size() && lx.s[lx.pos] == 'i') {
        lx.pos += 1;
        imag = true;
    }
    if (!have_mag && !sqrt3 && !imag)
        throw ConfigError("parse_latex: empty coefficient part at " + lx.rest());
    if (negative) mag = -mag;
    const int kind = (sqrt3 ? 1 : 0) + (imag ? 2 : 0);
    switch (kind) {
        case 0: return {mag, 0, 0, 0};
        case 1: return {0, mag, 0, 0};
        case 2: return {0, 0, mag, 0};
        default: return {0, 0, 0, mag};
    }
}

bool peek_symbol(Lexer& lx) {
    lx.skip_ws();
    return lx.s.compare(lx.pos, 8, "\\partial") == 0 || lx.s.compare(lx.pos, 2, "V_") == 0 ||
           lx.s.compare(lx.pos, 2, "W_") == 0;
}

GradedSymbol parse_symbol(Lexer& lx) {
    int deriv = 0;
    if (lx.accept("\\partial")) {
        deriv = 1;
        if (lx.accept("^")) deriv = static_cast<int>(braced_integer(lx));
    }
    SymbolBase base;
    if (lx.accept("V_c"))
        base = SymbolBase::Vc;
    else if (lx.accept("V_s"))
        base = SymbolBase::Vs;
    else if (lx.accept("W_c"))
        base = SymbolBase::Wc;
    else if (lx.accept("W_s"))
        base = SymbolBase::Ws;
    else
        throw ConfigError("parse_latex: expected symbol at " + lx.rest());
    return {base, deriv};
}

// factor := symbol [^{n}] | '(' symbol ')' '^{n}'
void parse_factor(Lexer& lx, Monomial& m) {
    if (lx.accept("(")) {
        GradedSymbol s = parse_symbol(lx);
        lx.expect(")");
        lx.expect("^");
        const long p = braced_integer(lx);
        for (long i = 0; i < p; ++i) m.push_back(s);
        return;
    }
    GradedSymbol s = parse_symbol(lx);
    long p = 1;
    if (lx.accept("^")) p = braced_integer(lx);
    for (long i = 0; i < p; ++i) m.push_back(s);
}

ExactScalar parse_coefficient(Lexer& lx, bool negative) {
    if (lx.accept("\\left(")) {
        ExactScalar acc;
        bool neg = lx.accept("-");
        acc += parse_part(lx, neg);
        while (true) {
            if (lx.accept("+"))
                acc += parse_part(lx, false);
            else if (lx.accept("-"))
                acc += parse_part(lx, true);
            else
                break;
        }
        lx.expect("\\right)");
        return negative ? -acc : acc;
    }
    if (peek_symbol(lx)) return negative ? -ExactScalar(1) : ExactScalar(1);
    return parse_part(lx, negative);
}

}  // namespace

GradedPoly parse_latex(const std::string& text) {
    Lexer lx{text, 0};
    GradedPoly out;
    if (lx.accept("0") && lx.eof()) return out;
    lx.pos = 0;

    bool negative = lx.accept("-");
    while (true) {
        ExactScalar coeff = parse_coefficient(lx, negative);
        Monomial m;
        while (peek_symbol(lx) || (!lx.eof() && lx.s[lx.pos] == '(')) {
            lx.skip_ws();
            if (lx.pos < lx.s.size() && lx.s[lx.pos] == '(') {
                parse_factor(lx, m);
            } else if (peek_symbol(lx)) {
                parse_factor(lx, m);
            } else {
                break;
            }
        }
        std::sort(m.begin(), m.end());
        GradedPoly term = GradedPoly::constant(coeff);
        for (const auto& s : m) term = term * GradedPoly::symbol(s.base, s.deriv);
        out += term;
        if (lx.eof()) break;
        if (lx.accept("+"))
            negative = false;
        else if (lx.accept("-"))
            negative = true;
        else
            throw ConfigError("parse_latex: unexpected input at " + lx.rest());
    }
    return out;
}

}  // namespace eckhaus::cas
