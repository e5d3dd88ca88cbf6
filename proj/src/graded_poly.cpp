#include "eckhaus/graded_poly.hpp"

#include <algorithm>

namespace eckhaus::cas {

bool is_critical_family(SymbolBase b) { return b == SymbolBase::Vc || b == SymbolBase::Wc; }

int monomial_weight4(const Monomial& m) {
    int w = 0;
    for (const auto& s : m) w += s.weight4();
    return w;
}

bool MonomialOrder::operator()(const Monomial& x, const Monomial& y) const {
    const int wx = monomial_weight4(x), wy = monomial_weight4(y);
    if (wx != wy) return wx < wy;
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

GradedPoly GradedPoly::constant(const ExactScalar& v) {
    GradedPoly p;
    p.add_term({}, v);
    return p;
}

GradedPoly GradedPoly::symbol(SymbolBase base, int deriv) {
    GradedPoly p;
    p.add_term({GradedSymbol{base, deriv}}, ExactScalar(1));
    return p;
}

ExactScalar GradedPoly::coefficient(const Monomial& m) const {
    Monomial key = m;
    std::sort(key.begin(), key.end());
    auto it = terms_.find(key);
    return it == terms_.end() ? ExactScalar() : it->second;
}

void GradedPoly::add_term(const Monomial& m, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
    GradedPoly p;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            p.add_term(m, ca * cb);
        }
    }
    return p;
}

GradedPoly GradedPoly::operator*(const ExactScalar& s) const {
    GradedPoly p;
    if (s.is_zero()) return p;
    for (const auto& [m, c] : terms_) p.add_term(m, c * s);
    return p;
}

GradedPoly GradedPoly::differentiate(int times) const {
    GradedPoly cur = *this;
    for (int t = 0; t < times; ++t) {
        GradedPoly next;
        for (const auto& [m, c] : cur.terms_) {
            for (size_t i = 0; i < m.size(); ++i) {
                Monomial d = m;
                d[i].deriv += 1;
                std::sort(d.begin(), d.end());
                next.add_term(d, c);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

GradedPoly GradedPoly::truncate_weight4(int maxw4) const {
    GradedPoly p;
    for (const auto& [m, c] : terms_)
        if (monomial_weight4(m) <= maxw4) p.terms_.emplace(m, c);
    return p;
}

GradedPoly GradedPoly::part_weight4(int w4) const {
    GradedPoly p;
    for (const auto& [m, c] : terms_)
        if (monomial_weight4(m) == w4) p.terms_.emplace(m, c);
    return p;
}

int GradedPoly::min_weight4() const {
    int w = INT_MAX;
    for (const auto& [m, c] : terms_) w = std::min(w, monomial_weight4(m));
    return w;
}

GradedPoly GradedPoly::substitute(SymbolBase base, const GradedPoly& repl, int maxw4) const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) {
        GradedPoly term = GradedPoly::constant(c);
        for (const auto& s : m) {
            GradedPoly factor;
            if (s.base == base)
                factor = repl.differentiate(s.deriv);
            else
                factor = GradedPoly::symbol(s.base, s.deriv);
            term = term * factor;
            if (maxw4 != INT_MAX) term = term.truncate_weight4(maxw4);
            if (term.is_zero()) break;
        }
        out += term;
    }
    return out;
}

GradedPoly GradedPoly::rename_base(SymbolBase from, SymbolBase to) const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial r = m;
        for (auto& s : r)
            if (s.base == from) s.base = to;
        std::sort(r.begin(), r.end());
        out.add_term(r, c);
    }
    return out;
}

bool GradedPoly::contains_base(SymbolBase base) const {
    for (const auto& [m, c] : terms_)
        for (const auto& s : m)
            if (s.base == base) return true;
    return false;
}

GradedPoly GradedPoly::drop_base(SymbolBase base) const {
    GradedPoly out;
    for (const auto& [m, c] : terms_) {
        bool has = false;
        for (const auto& s : m)
            if (s.base == base) has = true;
        if (!has) out.terms_.emplace(m, c);
    }
    return out;
}

GradedPoly apply_operator(const DiffOperator& op, const GradedPoly& p, int maxw4) {
    GradedPoly out;
    for (const auto& [n, c] : op) {
        GradedPoly d = p.differentiate(n) * c;
        if (maxw4 != INT_MAX) d = d.truncate_weight4(maxw4);
        out += d;
    }
    return out;
}

}  // namespace eckhaus::cas
