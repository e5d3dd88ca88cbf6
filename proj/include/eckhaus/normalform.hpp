// Slaving transform at the critical wavenumber: the damped mode component is
// solved as a function vs*(vc) of the critical one from the algebraic balance
//
//   0 = Ls vs + Ps[ N2(vc + vs) + C(vc) + DC(vc)[vs] ],
//
// i.e. the quadratic terms in full plus the cubic terms carrying at most one
// damped factor (the remaining cubic terms belong to the fast remainder).
// Picard iteration vs <- -Ls^{-1} Ps[...] converges for small critical data;
// Ls is invertible on range(Ps) since lambda2 <= -4/3 inside the cutoff and
// both branches are strictly negative outside it. The change of variables
// (vc, vs) -> (wc, ws = vs - vs*(vc)) removes every slow term from the damped
// equation, and the kernel probes measure the small-k scaling of the
// effective nonlinearities this produces in the critical-mode equation.
#pragma once

#include <utility>
#include <vector>

#include "eckhaus/dispersion.hpp"
#include "eckhaus/spectral.hpp"

namespace eckhaus::normalform {

struct SlavingOptions {
    double tol = 1e-12;          // l1 residual target for the balance equation
    int max_iterations = 60;
    double max_input_l1 = 0.1;   // contraction regime guard on spectral_l1(vc)
    bool dealias = true;         // 1/2-rule on every product
    dispersion::ProjectionSpec spec{};
};

struct SlavingSolution {
    SpectralPair vs_star;
    int iterations;
    double residual;  // spectral_l1 of the balance equation at the solution
};

// throws NoConvergence when the input is outside the contraction regime or
// the iteration fails to reach tolerance
SlavingSolution slaving_solve(const SpectralPair& vc, const SlavingOptions& opts = {});

// Graded closed form Vs*(Wc) = -1/2 Wc^2 - 3/4 d^2(Wc^2)
//   + 1/8 (-Wc^4 - 8 sqrt3 Wc^2 dWc - 9 (dWc)^2), evaluated spectrally.
RealField vs_star_closed(const RealField& wc);

struct TransformedState {
    SpectralField wc;  // scalar amplitude along phi1, cutoff-masked
    SpectralPair ws;
};

TransformedState to_normal_form(const SpectralPair& vc, const SpectralPair& vs,
                                const SlavingOptions& opts = {});
std::pair<SpectralPair, SpectralPair> from_normal_form(const TransformedState& t,
                                                       const SlavingOptions& opts = {});

// Effective scalar nonlinearity of the critical-mode equation at ws = 0:
// G(Wc) = chi <phi1*, N(vc + vs*(vc))> with vc = Wc phi1.
SpectralField effective_nonlinearity(const SpectralField& wc_amp,
                                     const SlavingOptions& opts = {});

// Closed-form marginal term -(3/2) sqrt3 d_X((d_X Wc)^2), cutoff-masked.
SpectralField marginal_term(const SpectralField& wc_amp, const SlavingOptions& opts = {});

// Homogeneous parts of G by amplitude polarization (degree 2..5).
struct PolarizedParts {
    SpectralField g2, g3, g4, g5;
};
PolarizedParts polarized_parts(const SpectralField& wc_amp, const SlavingOptions& opts = {});

enum class ProbeTerm { Mstar, B2, B3, B4, B5 };

struct ProbeResult {
    ProbeTerm term;
    std::vector<double> k;          // grid-snapped probe wavenumbers
    std::vector<double> magnitude;  // l1 of the isolated term at each k
    double exponent;                // fitted log-log slope
    double fit_residual;            // max |log magnitude - fit|
};

// Monochromatic probes of the effective terms; throws FitUnstable when the
// regression is degenerate. Probe wavenumbers must satisfy |k| <= 0.2.
ProbeResult kernel_probe(ProbeTerm term, const std::vector<double>& k_list,
                         double amplitude = 1e-3);

}  // namespace eckhaus::normalform
