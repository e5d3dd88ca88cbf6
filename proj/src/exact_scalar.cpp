#include "eckhaus/exact_scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eckhaus::cas {

void ExactScalar::canonicalize() {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    d_.canonicalize();
}

ExactScalar ExactScalar::rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    ExactScalar s;
    s.a_ = mpq_class(num, den);
    s.a_.canonicalize();
    return s;
}

ExactScalar ExactScalar::sqrt3() {
    ExactScalar s;
    s.b_ = 1;
    return s;
}

ExactScalar ExactScalar::imag_unit() {
    ExactScalar s;
    s.c_ = 1;
    return s;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    a_ += o.a_;
    b_ += o.b_;
    c_ += o.c_;
    d_ += o.d_;
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    c_ -= o.c_;
    d_ -= o.d_;
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    // (x + iy)(u + iv) with x = a + b s3 etc.; in Q[sqrt 3]:
    // (a + b s3)(a' + b' s3) = (aa' + 3bb') + (ab' + a'b) s3
    const mpq_class ra = a_ * o.a_ + 3 * b_ * o.b_ - (c_ * o.c_ + 3 * d_ * o.d_);
    const mpq_class rb = a_ * o.b_ + b_ * o.a_ - (c_ * o.d_ + d_ * o.c_);
    const mpq_class rc = a_ * o.c_ + 3 * b_ * o.d_ + c_ * o.a_ + 3 * d_ * o.b_;
    const mpq_class rd = a_ * o.d_ + b_ * o.c_ + c_ * o.b_ + d_ * o.a_;
    a_ = ra;
    b_ = rb;
    c_ = rc;
    d_ = rd;
    return *this;
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw std::domain_error("ExactScalar: inverse of zero");
    // 1/z = conj(z) / (z conj(z)); z conj(z) = x^2 + y^2 lies in Q[sqrt 3],
    // and 1/(p + q s3) = (p - q s3)/(p^2 - 3 q^2).
    const ExactScalar zz = (*this) * conj();
    const mpq_class p = zz.a_, q = zz.b_;
    const mpq_class denom = p * p - 3 * q * q;
    if (denom == 0) throw std::domain_error("ExactScalar: norm degenerate");
    ExactScalar real_inv;
    real_inv.a_ = p / denom;
    real_inv.b_ = -q / denom;
    return conj() * real_inv;
}

std::complex<double> ExactScalar::to_complex() const {
    const double s3 = std::sqrt(3.0);
    return {a_.get_d() + b_.get_d() * s3, c_.get_d() + d_.get_d() * s3};
}

std::string ExactScalar::str() const {
    std::ostringstream os;
    os << "(" << a_.get_str() << " + " << b_.get_str() << "*s3) + i(" << c_.get_str() << " + "
       << d_.get_str() << "*s3)";
    return os.str();
}

}  // namespace eckhaus::cas
