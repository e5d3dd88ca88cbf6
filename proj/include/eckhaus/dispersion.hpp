// Linearization of the Ginzburg-Landau equation about the periodic equilibrium
// A_q = sqrt(1-q^2) e^{iqX} in the multiplicative perturbation variables
// (Vr, Vi). Per Fourier mode k the linear part is the Hermitian 2x2 symbol
//
//   M(k; q) = [ -k^2 - 2(1-q^2)   -2q ik ]
//             [  2q ik            -k^2   ]
//
// with real eigenvalue curves lambda1 >= lambda2. This header provides the
// closed-form curves for general |q| < 1, the eigenvector/adjoint machinery
// and mode projections at the critical wavenumber q = sqrt(1/3), and the
// diagonalizing change of basis S = (phi2 phi1).
#pragma once

#include <array>
#include <complex>
#include <utility>

#include "eckhaus/spectral.hpp"

namespace eckhaus::dispersion {

using cdouble = std::complex<double>;
using Cvec2 = std::array<cdouble, 2>;
using Cmat2 = std::array<cdouble, 4>;  // row major: {a11, a12, a21, a22}

inline double critical_q() { return std::sqrt(1.0 / 3.0); }

Cmat2 linear_matrix(double k, double q);  // throws InvalidWavenumber if |q| >= 1

// (lambda1, lambda2) with lambda1 >= lambda2, both real:
//   lambda = -k^2 - (1-q^2) +/- sqrt((1-q^2)^2 + 4 q^2 k^2),
// evaluated in a cancellation-free arrangement for small k.
std::pair<double, double> eigenvalues(double k, double q);

enum class Stability { Stable, Marginal, Unstable };

struct StabilityScan {
    Stability verdict;
    double max_growth;  // sup_k lambda1(k; q)
    double argmax_k;    // where the sup is attained (0 when stable/marginal)
};

StabilityScan classify_stability(double q);

// Eigenvectors at q = sqrt(1/3), normalized as phi1 = (a(k), 1) and
// phi2 = (1, b(k)); valid for every real k (the two curves never collide).
Cvec2 eigenvector_c(double k);  // phi1, the branch tangent to zero at k = 0
Cvec2 eigenvector_s(double k);  // phi2, the damped branch

// Left eigenvectors (phi1*, phi2*) with <phi_i*, phi_j> = delta_ij.
std::pair<Cvec2, Cvec2> adjoint_pair(double k);

// Sharp mode cutoff: chi(k) = 1 for |k| <= k0/2, else 0.
struct ProjectionSpec {
    double k0 = 1.0;
    bool inside(double k) const { return std::abs(k) <= 0.5 * k0; }
    ProjectionSpec() = default;
    explicit ProjectionSpec(double cutoff);
};

// Pc v(k) = chi(k) <phi1*(k), v(k)> phi1(k), Ps = I - Pc.
SpectralPair project_c(const SpectralPair& v, const ProjectionSpec& spec = {},
                       double q = critical_q());
SpectralPair project_s(const SpectralPair& v, const ProjectionSpec& spec = {},
                       double q = critical_q());

// S(k) = (phi2(k) phi1(k)) and its inverse; S S^{-1} = I.
std::pair<Cmat2, Cmat2> transform_S(double k);

// General-q eigenvectors with the same normalization; used internally by the
// projections and by the simulator's per-mode diagonalization.
Cvec2 eigenvector_c(double k, double q);
Cvec2 eigenvector_s(double k, double q);
std::pair<Cvec2, Cvec2> adjoint_pair(double k, double q);

inline cdouble dot(const Cvec2& a, const Cvec2& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

}  // namespace eckhaus::dispersion
