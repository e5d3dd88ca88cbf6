// Exact arithmetic in the field Q(sqrt(3), i), represented as
// (a + b sqrt(3)) + i (c + d sqrt(3)) with arbitrary-precision rationals.
// Every coefficient produced by the graded derivations lives here; no
// floating point ever enters.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace eckhaus::cas {

class ExactScalar {
  public:
    ExactScalar() = default;
    ExactScalar(long v) : a_(v) {}  // NOLINT: implicit from integers is intended
    ExactScalar(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d)
        : a_(a), b_(b), c_(c), d_(d) {
        canonicalize();
    }

    static ExactScalar rational(long num, long den);
    static ExactScalar sqrt3();      // sqrt(3)
    static ExactScalar imag_unit();  // i

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    const mpq_class& c() const { return c_; }
    const mpq_class& d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_real() const { return c_ == 0 && d_ == 0; }

    ExactScalar operator-() const { return {-a_, -b_, -c_, -d_}; }
    ExactScalar conj() const { return {a_, b_, -c_, -d_}; }
    ExactScalar inverse() const;  // throws std::domain_error on zero

    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar l, const ExactScalar& r) { return l += r; }
    friend ExactScalar operator-(ExactScalar l, const ExactScalar& r) { return l -= r; }
    friend ExactScalar operator*(ExactScalar l, const ExactScalar& r) { return l *= r; }
    friend ExactScalar operator/(const ExactScalar& l, const ExactScalar& r) {
        return l * r.inverse();
    }
    friend bool operator==(const ExactScalar& l, const ExactScalar& r) {
        return l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_ && l.d_ == r.d_;
    }

    std::complex<double> to_complex() const;
    std::string str() const;  // debug form like "(a+b*s3) + i(c+d*s3)"

  private:
    void canonicalize();
    mpq_class a_{0}, b_{0}, c_{0}, d_{0};
};

}  // namespace eckhaus::cas
