#include "eckhaus/kjet.hpp"

#include <algorithm>
#include <stdexcept>

#include "eckhaus/errors.hpp"

namespace eckhaus::cas {

KJet KJet::constant(const ExactScalar& v, int order) {
    KJet j(order);
    j.c_[0] = v;
    return j;
}

KJet KJet::monomial(const ExactScalar& coeff, int power, int order) {
    KJet j(order);
    if (power <= order) j.c_[power] = coeff;
    return j;
}

bool KJet::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

KJet KJet::operator-() const {
    KJet j = *this;
    for (auto& v : j.c_) v = -v;
    return j;
}

KJet& KJet::operator+=(const KJet& o) {
    const int n = std::min(order(), o.order());
    c_.resize(n + 1);
    for (int i = 0; i <= n; ++i) c_[i] += o.c_[i];
    return *this;
}

KJet& KJet::operator-=(const KJet& o) {
    const int n = std::min(order(), o.order());
    c_.resize(n + 1);
    for (int i = 0; i <= n; ++i) c_[i] -= o.c_[i];
    return *this;
}

KJet KJet::operator*(const KJet& o) const {
    const int n = std::min(order(), o.order());
    KJet j(n);
    for (int i = 0; i <= n; ++i)
        for (int l = 0; l <= n - i; ++l) j.c_[i + l] += c_[i] * o.c_[l];
    return j;
}

KJet KJet::operator*(const ExactScalar& s) const {
    KJet j = *this;
    for (auto& v : j.c_) v = v * s;
    return j;
}

KJet KJet::inverse() const {
    if (c_[0].is_zero()) throw std::domain_error("KJet: inverse needs nonzero constant term");
    const int n = order();
    KJet j(n);
    const ExactScalar inv0 = c_[0].inverse();
    j.c_[0] = inv0;
    for (int m = 1; m <= n; ++m) {
        ExactScalar s;
        for (int l = 1; l <= m; ++l) s += c_[l] * j.c_[m - l];
        j.c_[m] = -(inv0 * s);
    }
    return j;
}

KJet KJet::sqrt_one_plus(const KJet& u) {
    if (!u.c_[0].is_zero())
        throw std::domain_error("KJet: sqrt_one_plus needs zero constant term");
    const int n = u.order();
    KJet y(n);
    y.c_[0] = ExactScalar(1);
    const ExactScalar half = ExactScalar::rational(1, 2);
    for (int m = 1; m <= n; ++m) {
        ExactScalar s = u.c_[m];
        for (int j = 1; j < m; ++j) s -= y.c_[j] * y.c_[m - j];
        y.c_[m] = half * s;
    }
    return y;
}

std::complex<double> KJet::eval(double k) const {
    std::complex<double> acc{0.0, 0.0};
    for (int n = order(); n >= 0; --n) acc = acc * k + c_[n].to_complex();
    return acc;
}

namespace {

void check_zero(const KJet& j, const char* what) {
    for (int n = 0; n <= j.order(); ++n)
        if (!j.coeff(n).is_zero())
            throw OrderInconsistency(std::string("jet_eigsystem: ") + what +
                                     " fails at order k^" + std::to_string(n));
}

}  // namespace

EigJets jet_eigsystem(int n_max) {
    if (n_max < 4 || n_max > 8)
        throw std::invalid_argument("jet_eigsystem: order must be in [4, 8]");
    const int N = n_max;
    const ExactScalar one(1);
    const ExactScalar k2coef(1);
    const ExactScalar c43 = ExactScalar::rational(4, 3);
    const ExactScalar c23 = ExactScalar::rational(2, 3);
    // 2 sqrt(1/3) = (2/3) sqrt(3)
    const ExactScalar c2q = ExactScalar::rational(2, 3) * ExactScalar::sqrt3();
    const ExactScalar i_unit = ExactScalar::imag_unit();

    const KJet k2 = KJet::monomial(k2coef, 2, N);
    const KJet u = KJet::monomial(ExactScalar(3), 2, N);  // 3 k^2
    const KJet root = KJet::sqrt_one_plus(u);             // sqrt(1 + 3k^2)

    EigJets out{KJet(N), KJet(N), KJet(N), KJet(N), KJet(N), KJet(N), KJet(N), KJet(N)};
    out.lambda1 = -k2 - KJet::constant(c23, N) + root * c23;
    out.lambda2 = -k2 - KJet::constant(c23, N) - root * c23;

    // characteristic polynomial (k^2+lambda)^2 + 4/3 (k^2+lambda) - 4/3 k^2
    for (const KJet* lam : {&out.lambda1, &out.lambda2}) {
        KJet w = k2 + *lam;
        KJet chi = w * w + w * c43 - k2 * c43;
        check_zero(chi, "characteristic polynomial");
    }

    // phi1 = (A, 1): row one of (M - lambda1) gives
    //   (-k^2 - 4/3 - lambda1) A - (2/3) sqrt(3) i k = 0,
    // row two is the order-by-order consistency check.
    const KJet d1 = -k2 - KJet::constant(c43, N) - out.lambda1;
    const KJet ik = KJet::monomial(c2q * i_unit, 1, N);
    out.phi1_first = (ik * d1.inverse());
    {
        // row two of (M - lambda1) phi1: (2/3) sqrt3 i k * A + (-k^2 - lambda1)
        KJet row2 = ik * out.phi1_first + (-k2 - out.lambda1);
        check_zero(row2, "phi1 second-row identity");
    }

    // phi2 = (1, B): row two gives (2/3) sqrt(3) i k + (-k^2 - lambda2) B = 0
    const KJet d2 = -k2 - out.lambda2;
    out.phi2_second = -(ik * d2.inverse());
    {
        const KJet mik = KJet::monomial(-(c2q * i_unit), 1, N);
        KJet row1 = (-k2 - KJet::constant(c43, N) - out.lambda2) + mik * out.phi2_second;
        check_zero(row1, "phi2 first-row identity");
    }

    out.det = KJet::constant(one, N) - out.phi1_first * out.phi2_second;
    out.sinv_diag = out.det.inverse();
    out.sinv_off12 = -(out.phi1_first * out.sinv_diag);
    out.sinv_off21 = -(out.phi2_second * out.sinv_diag);

    // S S^-1 = I through the truncation order
    KJet p11 = out.sinv_diag + out.phi1_first * out.sinv_off21 - KJet::constant(one, N);
    KJet p12 = out.sinv_off12 + out.phi1_first * out.sinv_diag;
    check_zero(p11, "S S^-1 diagonal");
    check_zero(p12, "S S^-1 off-diagonal");

    return out;
}

}  // namespace eckhaus::cas
