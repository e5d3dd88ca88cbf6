// Weight-graded polynomial algebra over the exact scalars. Symbols are
// derivatives of the mode amplitudes; each carries a weight counted in
// quarter units (weight * 4), so gradings stay in integer arithmetic:
//
//   weight4(d^n Vc) = n + 1,   weight4(d^n Vs) = n + 2,
//
// and Wc / Ws reuse the Vc / Vs weights. Monomials are multisets of symbols;
// the canonical order is (total weight, degree, lexicographic), which fixes
// a deterministic printed form.
#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <vector>

#include "eckhaus/exact_scalar.hpp"

namespace eckhaus::cas {

enum class SymbolBase : std::uint8_t { Vc = 0, Vs = 1, Wc = 2, Ws = 3 };

bool is_critical_family(SymbolBase b);  // Vc or Wc

struct GradedSymbol {
    SymbolBase base;
    int deriv = 0;

    int weight4() const { return deriv + (is_critical_family(base) ? 1 : 2); }
    friend auto operator<=>(const GradedSymbol&, const GradedSymbol&) = default;
};

using Monomial = std::vector<GradedSymbol>;  // kept sorted

int monomial_weight4(const Monomial& m);

struct MonomialOrder {
    bool operator()(const Monomial& x, const Monomial& y) const;
};

class GradedPoly {
  public:
    using TermMap = std::map<Monomial, ExactScalar, MonomialOrder>;

    GradedPoly() = default;
    static GradedPoly constant(const ExactScalar& v);
    static GradedPoly symbol(SymbolBase base, int deriv = 0);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    ExactScalar coefficient(const Monomial& m) const;

    GradedPoly operator-() const;
    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    friend GradedPoly operator+(GradedPoly l, const GradedPoly& r) { return l += r; }
    friend GradedPoly operator-(GradedPoly l, const GradedPoly& r) { return l -= r; }
    GradedPoly operator*(const GradedPoly& o) const;
    GradedPoly operator*(const ExactScalar& s) const;
    friend bool operator==(const GradedPoly& l, const GradedPoly& r) {
        return l.terms_ == r.terms_;
    }

    // d/dX via the Leibniz rule; raises each monomial's weight4 by `times`.
    GradedPoly differentiate(int times = 1) const;

    // Drop monomials with weight4 > maxw4 (or keep only weight4 == w4).
    GradedPoly truncate_weight4(int maxw4) const;
    GradedPoly part_weight4(int w4) const;
    int min_weight4() const;  // INT_MAX when zero

    // Replace every d^n(base) by the n-th derivative of repl, expanding
    // products; truncate at maxw4 while multiplying to bound the blow-up.
    GradedPoly substitute(SymbolBase base, const GradedPoly& repl, int maxw4 = INT_MAX) const;
    GradedPoly rename_base(SymbolBase from, SymbolBase to) const;
    bool contains_base(SymbolBase base) const;
    GradedPoly drop_base(SymbolBase base) const;  // terms containing base removed

    // All coefficients exactly representable, by construction; provided so
    // tests can walk outputs and assert no floating-point contamination.
    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [m, c] : terms_) f(m, c);
    }

  private:
    void add_term(const Monomial& m, const ExactScalar& c);
    TermMap terms_;
};

inline GradedPoly operator*(const ExactScalar& s, const GradedPoly& p) { return p * s; }

// Differential operator sum_n c_n d^n applied to p.
using DiffOperator = std::vector<std::pair<int, ExactScalar>>;
GradedPoly apply_operator(const DiffOperator& op, const GradedPoly& p, int maxw4 = INT_MAX);

}  // namespace eckhaus::cas
