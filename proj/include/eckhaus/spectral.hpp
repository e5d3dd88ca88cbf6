// Discrete Fourier transforms on the periodic grid and the Fourier-side norms
// used throughout. The transform pair mirrors the continuum convention
//
//   u_hat(k) = (1/2pi) Int u(x) e^{-ikx} dx,   u(x) = Int u_hat(k) e^{ikx} dk,
//
// so SpectralField::c[j] is a Riemann-sum approximation of u_hat(k_j) and the
// inverse sums dk * u_hat(k_j) e^{i k_j x}. With that normalization the
// discrete inequality max|u| <= spectral_l1(u_hat) holds exactly.
#pragma once

#include <complex>
#include <vector>

#include "eckhaus/grid.hpp"

namespace eckhaus {

using cdouble = std::complex<double>;

struct RealField {
    Grid grid;
    std::vector<double> values;

    RealField(const Grid& g, std::vector<double> v);
    explicit RealField(const Grid& g) : RealField(g, std::vector<double>(g.n(), 0.0)) {}
};

struct SpectralField {
    Grid grid;
    std::vector<cdouble> c;  // u_hat(k_j), FFT storage order

    SpectralField(const Grid& g, std::vector<cdouble> coeffs);
    explicit SpectralField(const Grid& g) : SpectralField(g, std::vector<cdouble>(g.n(), cdouble{0.0, 0.0})) {}
};

// Two-component spectral field: the per-mode 2-vector (Vr_hat, Vi_hat).
struct SpectralPair {
    SpectralField vr;
    SpectralField vi;

    explicit SpectralPair(const Grid& g) : vr(g), vi(g) {}
    SpectralPair(SpectralField a, SpectralField b) : vr(std::move(a)), vi(std::move(b)) {}
    const Grid& grid() const { return vr.grid; }
};

SpectralField to_spectral(const RealField& u);
RealField from_spectral(const SpectralField& f);  // throws SymmetryViolation

// Raw transforms for complex data (same normalization, no symmetry check).
std::vector<cdouble> forward_transform(const Grid& g, const std::vector<cdouble>& values);
std::vector<cdouble> inverse_transform(const Grid& g, const std::vector<cdouble>& coeffs);

// dk * sum_j |u_hat(k_j)|  (discrete L1 in k)
double spectral_l1(const SpectralField& f);
// max_j |u_hat(k_j)|
double spectral_linf(const SpectralField& f);
// Same norms with the per-mode C^2 Euclidean norm.
double spectral_l1(const SpectralPair& f);
double spectral_linf(const SpectralPair& f);

// Multiply by (ik)^order. The Nyquist mode is zeroed for odd order, where the
// one-sided k = -n/2 mode would otherwise break the odd symmetry of ik.
SpectralField derivative(const SpectralField& f, int order);

// 1/2-rule dealiasing for cubic products: zero all modes with |s| > n/4.
void dealias_half(SpectralField& f);
void dealias_half(std::vector<cdouble>& coeffs);

bool is_hermitian(const SpectralField& f, double rel_tol = 1e-10);

}  // namespace eckhaus
