// Truncated power series in k with exact coefficients, and the order-by-order
// eigensystem of the 2x2 symbol at q^2 = 1/3: eigenvalue jets from the
// characteristic polynomial, eigenvector jets from the kernel recurrences
// (each even order is an identity that must hold and is asserted), the change
// of basis S = (phi2 phi1), its determinant and inverse.
#pragma once

#include <complex>
#include <vector>

#include "eckhaus/exact_scalar.hpp"

namespace eckhaus::cas {

class KJet {
  public:
    explicit KJet(int order) : c_(order + 1) {}
    static KJet constant(const ExactScalar& v, int order);
    static KJet monomial(const ExactScalar& coeff, int power, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const ExactScalar& coeff(int n) const { return c_[n]; }
    void set(int n, const ExactScalar& v) { c_[n] = v; }
    bool is_zero() const;

    KJet operator-() const;
    KJet& operator+=(const KJet& o);
    KJet& operator-=(const KJet& o);
    friend KJet operator+(KJet l, const KJet& r) { return l += r; }
    friend KJet operator-(KJet l, const KJet& r) { return l -= r; }
    KJet operator*(const KJet& o) const;  // truncated at min order
    KJet operator*(const ExactScalar& s) const;
    friend bool operator==(const KJet&, const KJet&) = default;

    KJet inverse() const;  // needs coeff(0) != 0
    // sqrt(1 + u) for a jet u with zero constant term, via the coefficient
    // recursion y_n = (u_n - sum_{j=1}^{n-1} y_j y_{n-j}) / 2.
    static KJet sqrt_one_plus(const KJet& u);

    std::complex<double> eval(double k) const;

  private:
    std::vector<ExactScalar> c_;
};

struct EigJets {
    KJet lambda1, lambda2;
    KJet phi1_first;   // phi1 = (phi1_first, 1)
    KJet phi2_second;  // phi2 = (1, phi2_second)
    KJet det;          // det S = 1 - phi1_first * phi2_second
    KJet sinv_diag;    // (S^-1)_11 = (S^-1)_22 = 1/det
    KJet sinv_off12;   // (S^-1)_12 = -phi1_first/det
    KJet sinv_off21;   // (S^-1)_21 = -phi2_second/det
};

// throws OrderInconsistency if any order's check equation fails
EigJets jet_eigsystem(int n_max);

}  // namespace eckhaus::cas
