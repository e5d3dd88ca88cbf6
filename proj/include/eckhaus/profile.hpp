// Self-similar limit profile of the canonical equation. With the ansatz
// phi(X, T) = T^{-1/4} psi(X T^{-1/4}) the profile solves
//
//   0 = -psi'''' + (1/4) psi + (1/4) xi psi' - ((psi')^2)',
//
// and in Fourier variables the linear operator reads L u = -k^4 u - (1/4) k u'.
// Its kernel is spanned by psi0_hat = e^{-k^4}; on the mass-free complement L
// is inverted with the integrating factor e^{k^4}, evaluated in the rescaled
// form J(k) = Int_0^k e^{l^4 - k^4} g(l) dl so no large exponentials appear,
// plus defect-correction sweeps against the discrete operator. The profile
// follows by Picard iteration, and collapse_metric compares renormalized
// simulations against it.
#pragma once

#include <complex>
#include <vector>

#include "eckhaus/selfsim.hpp"
#include "eckhaus/spectral.hpp"

namespace eckhaus::selfsim {

// The k-range must hold not just e^{-k^4} but the slower peak-times-tail
// convolution cascade of the nonlinear correction; [-6, 6] keeps the edge
// content below the 1e-10 residual scale at masses up to ~0.1.
struct ProfileGrid {
    int n = 6144;
    double kmax = 6.0;

    double dk() const { return 2.0 * kmax / n; }
    double k(int j) const { return -kmax + j * dk(); }
    int center() const { return n / 2; }  // index of k = 0
};

using ProfileField = std::vector<cdouble>;  // samples on the monotone k grid

ProfileField psi0_hat(const ProfileGrid& g);     // e^{-k^4}
ProfileField phi_lin_hat(const ProfileGrid& g);  // e^{-(3/4) k^4}

// L u = -k^4 u - (1/4) k u' with 4th-order centered differences for u'.
ProfileField apply_L(const ProfileGrid& g, const ProfileField& u);

// Solves L u = f on the mass-free subspace (throws MassNotZero when
// |f(0)| > 1e-12); from_spectral u satisfies u(0) = 0, so P0 u = 0.
ProfileField invert_L(const ProfileGrid& g, const ProfileField& f);

// P0 u = u(0) e^{-k^4} and the mass-free remainder.
struct MassSplit {
    ProfileField mass_component;
    ProfileField remainder;
};
MassSplit p0_project(const ProfileGrid& g, const ProfileField& u);

// Physical-space counterpart on a periodic grid: the mass component is the
// profile eigenmode centered at the domain midpoint carrying Int u.
struct MassSplitReal {
    double mass;
    RealField mass_component;
    RealField remainder;
};
MassSplitReal p0_project(const RealField& u, const ProfileGrid& g = {});

// Fourier-sum evaluation at an arbitrary point.
double eval_field(const ProfileGrid& g, const ProfileField& u, double xi);

struct ProfileSolution {
    ProfileGrid grid;
    double A;
    ProfileField psi_hat;        // A psi0 + psi_minus
    ProfileField psi_minus_hat;  // mass-free correction
    double residual;             // sup_k |L psi - N(psi)| of the profile equation
    int iterations;

    double eval(double xi) const { return eval_field(grid, psi_hat, xi); }
};

// Picard iteration psi_minus <- L^{-1} P_-[((psi')^2)'] at fixed mass A;
// enforced |A| <= 0.3, throws NoConvergence past the iteration limit.
ProfileSolution fixed_point_profile(double A, const ProfileGrid& g = {},
                                    double tol = 1e-12, int max_iterations = 200);

// Renormalized comparison of an amplitude-equation trajectory (snapshots
// required) against a profile: e(T) = sup_xi |T^{1/4} phi(xi T^{1/4}) - psi(xi)|,
// with phi evaluated by spectral interpolation about the domain midpoint.
struct CollapsePoint {
    double t;
    double err;
};
std::vector<CollapsePoint> collapse_metric(const AmplitudeTrajectory& traj,
                                           const ProfileSolution& profile,
                                           const Grid& run_grid);

struct CollapseConfig {
    double A = 0.05;
    int n = 1024;
    double length = 256.0;
    double dt = 0.05;
    double t_start = 1.0;
    double t_end = 1e3;
    double ic_width = 1.0;
    // odd modulated component b sin(k (X - L/2)) under a broad envelope:
    // mass-free, first-moment-free (up to e^{-k^2 sigma^2 / 4}), and gone by
    // T ~ several / k^4, so it feeds the early error but not the late one
    double ic_wiggle = 0.015;
    double ic_wiggle_k = 0.4;
    double ic_wiggle_width = 20.0;
    bool start_from_profile = false;  // initial data = rescaled profile at t_start
};

struct CollapseResult {
    std::vector<CollapsePoint> series;
    double mass_drift_rel;
    double initial_mass;
};

// Canonical-equation run plus collapse series against fixed_point_profile(A).
CollapseResult collapse_run(const CollapseConfig& config);

}  // namespace eckhaus::selfsim
