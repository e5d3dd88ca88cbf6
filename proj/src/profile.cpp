#include "eckhaus/profile.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "eckhaus/errors.hpp"

namespace eckhaus::selfsim {

namespace {

double sup_abs(const ProfileField& u) {
    double m = 0.0;
    for (const auto& z : u) m = std::max(m, std::abs(z));
    return m;
}

// 4th-order centered first derivative in k with zero extension at the edges;
// the fields of interest decay like e^{-k^4} far inside the boundary.
ProfileField ddk(const ProfileGrid& g, const ProfileField& u) {
    const int n = g.n;
    ProfileField out(n);
    auto at = [&](int j) -> cdouble { return (j < 0 || j >= n) ? cdouble(0.0) : u[j]; };
    const double h = g.dk();
    for (int j = 0; j < n; ++j)
        out[j] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
    return out;
}

// linear convolution (f * g)(k_m) = Int f(k_m - l) g(l) dl via zero-padded FFT
ProfileField convolve(const ProfileGrid& g, const ProfileField& a, const ProfileField& b) {
    const int n = g.n;
    const int m = 2 * n;
    static thread_local std::vector<cdouble> fa, fb;
    fa.assign(m, cdouble(0.0));
    fb.assign(m, cdouble(0.0));
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());

    auto* pa = reinterpret_cast<fftw_complex*>(fa.data());
    auto* pb = reinterpret_cast<fftw_complex*>(fb.data());
    static thread_local fftw_plan fwd = nullptr, bwd = nullptr;
    static thread_local int planned_m = 0;
    if (planned_m != m) {
        static std::mutex planner_mutex;  // FFTW planning is not thread-safe
        std::lock_guard<std::mutex> lock(planner_mutex);
        if (fwd != nullptr) fftw_destroy_plan(fwd);
        if (bwd != nullptr) fftw_destroy_plan(bwd);
        fwd = fftw_plan_dft_1d(m, pa, pa, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd = fftw_plan_dft_1d(m, pa, pa, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        planned_m = m;
    }
    fftw_execute_dft(fwd, pa, pa);
    fftw_execute_dft(fwd, pb, pb);
    for (int j = 0; j < m; ++j) fa[j] *= fb[j] / static_cast<double>(m);
    fftw_execute_dft(bwd, pa, pa);

    // index algebra: p = i + j corresponds to wavenumber -2 kmax + p dk, and
    // the output at k_q = -kmax + q dk sits at p = q + n/2
    ProfileField out(n);
    for (int q = 0; q < n; ++q) out[q] = fa[q + n / 2] * g.dk();
    return out;
}

// N(psi) in Fourier variables: ik * ((ik psi)^ * (ik psi)^)
ProfileField nonlinear_hat(const ProfileGrid& g, const ProfileField& psi) {
    const int n = g.n;
    ProfileField u(n);
    for (int j = 0; j < n; ++j) u[j] = cdouble(0.0, g.k(j)) * psi[j];
    ProfileField w = convolve(g, u, u);
    for (int j = 0; j < n; ++j) w[j] *= cdouble(0.0, g.k(j));
    return w;
}

// integrating-factor solve of L u = f with u(0) = 0, written so that every
// exponential factor is e^{l^4 - k^4} <= 1:
//   u(k) = -4 Int_0^k e^{l^4 - k^4} f(l)/l dl
ProfileField integrating_factor_solve(const ProfileGrid& g, const ProfileField& f) {
    const int n = g.n;
    const int c = g.center();
    const double h = g.dk();

    ProfileField gg(n);  // f(l)/l with the removable singularity filled at l = 0
    for (int j = 0; j < n; ++j) {
        const double k = g.k(j);
        gg[j] = (j == c) ? cdouble(0.0) : f[j] / k;
    }
    gg[c] = (-f[c + 2] + 8.0 * f[c + 1] - 8.0 * f[c - 1] + f[c - 2]) / (12.0 * h);

    auto quartic = [&](int j) { return std::pow(g.k(j), 4); };
    ProfileField u(n, cdouble(0.0));

    // positive side: J_j = e^{k_{j-1}^4 - k_j^4} J_{j-1} + local quadratic rule
    cdouble J(0.0);
    for (int j = c + 1; j < n; ++j) {
        const double decay = std::exp(quartic(j - 1) - quartic(j));
        // quadratic through three consecutive points, integrated over the
        // last interval; near k = 0 the stencil leans right
        int s0 = j - 2, s1 = j - 1, s2 = j;
        double w0 = -1.0 / 12.0, w1 = 8.0 / 12.0, w2 = 5.0 / 12.0;
        if (j == c + 1) {
            s0 = c;
            s1 = c + 1;
            s2 = c + 2;
            w0 = 5.0 / 12.0;
            w1 = 8.0 / 12.0;
            w2 = -1.0 / 12.0;
        }
        auto scaled = [&](int s) { return std::exp(quartic(s) - quartic(j)) * gg[s]; };
        const cdouble local = h * (w0 * scaled(s0) + w1 * scaled(s1) + w2 * scaled(s2));
        J = decay * J + local;
        u[j] = -4.0 * J;
    }

    // negative side, mirrored
    J = cdouble(0.0);
    for (int j = c - 1; j >= 0; --j) {
        const double decay = std::exp(quartic(j + 1) - quartic(j));
        int s0 = j + 2, s1 = j + 1, s2 = j;
        double w0 = -1.0 / 12.0, w1 = 8.0 / 12.0, w2 = 5.0 / 12.0;
        if (j == c - 1) {
            s0 = c;
            s1 = c - 1;
            s2 = c - 2;
            w0 = 5.0 / 12.0;
            w1 = 8.0 / 12.0;
            w2 = -1.0 / 12.0;
        }
        auto scaled = [&](int s) { return std::exp(quartic(s) - quartic(j)) * gg[s]; };
        // integral runs from k_{j+1} down to k_j: negative orientation
        const cdouble local = -h * (w0 * scaled(s0) + w1 * scaled(s1) + w2 * scaled(s2));
        J = decay * J + local;
        u[j] = -4.0 * J;
    }
    return u;
}

}  // namespace

ProfileField psi0_hat(const ProfileGrid& g) {
    ProfileField out(g.n);
    for (int j = 0; j < g.n; ++j) out[j] = std::exp(-std::pow(g.k(j), 4));
    return out;
}

ProfileField phi_lin_hat(const ProfileGrid& g) {
    ProfileField out(g.n);
    for (int j = 0; j < g.n; ++j) out[j] = std::exp(-0.75 * std::pow(g.k(j), 4));
    return out;
}

ProfileField apply_L(const ProfileGrid& g, const ProfileField& u) {
    ProfileField du = ddk(g, u);
    ProfileField out(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double k = g.k(j);
        out[j] = -std::pow(k, 4) * u[j] - 0.25 * k * du[j];
    }
    return out;
}

ProfileField invert_L(const ProfileGrid& g, const ProfileField& f) {
    if (std::abs(f[g.center()]) > 1e-12)
        throw MassNotZero("invert_L: input carries mass; project with P0 first");

    ProfileField u = integrating_factor_solve(g, f);
    // defect-correction sweeps make the composition with the discrete
    // operator exact to round-off
    for (int sweep = 0; sweep < 3; ++sweep) {
        ProfileField r = apply_L(g, u);
        for (int j = 0; j < g.n; ++j) r[j] = f[j] - r[j];
        r[g.center()] = 0.0;
        ProfileField du = integrating_factor_solve(g, r);
        for (int j = 0; j < g.n; ++j) u[j] += du[j];
    }
    return u;
}

MassSplit p0_project(const ProfileGrid& g, const ProfileField& u) {
    const cdouble mass_coeff = u[g.center()];
    MassSplit s{psi0_hat(g), u};
    for (int j = 0; j < g.n; ++j) {
        s.mass_component[j] *= mass_coeff;
        s.remainder[j] -= s.mass_component[j];
    }
    return s;
}

MassSplitReal p0_project(const RealField& u, const ProfileGrid& pg) {
    const Grid& g = u.grid;
    double mass = 0.0;
    for (double v : u.values) mass += v;
    mass *= g.dx();

    // psi0 sampled about the domain midpoint; its own mass is 2 pi psi0_hat(0)
    const double psi0_mass = 2.0 * std::numbers::pi;
    ProfileField p0 = psi0_hat(pg);
    MassSplitReal out{mass, RealField(g), u};
    for (int m = 0; m < g.n(); ++m) {
        const double xi = g.x(m) - 0.5 * g.length();
        out.mass_component.values[m] = (mass / psi0_mass) * eval_field(pg, p0, xi);
        out.remainder.values[m] = u.values[m] - out.mass_component.values[m];
    }
    return out;
}

double eval_field(const ProfileGrid& g, const ProfileField& u, double xi) {
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double k = g.k(j);
        acc += std::real(u[j] * std::polar(1.0, k * xi));
    }
    return acc * g.dk();
}

ProfileSolution fixed_point_profile(double A, const ProfileGrid& g, double tol,
                                    int max_iterations) {
    if (!(std::abs(A) <= 0.3))
        throw std::invalid_argument("fixed_point_profile: |A| must be <= 0.3");

    const ProfileField psi0 = psi0_hat(g);
    ProfileField psi_minus(g.n, cdouble(0.0));
    ProfileField psi(g.n);

    int it = 0;
    for (; it < max_iterations; ++it) {
        for (int j = 0; j < g.n; ++j) psi[j] = A * psi0[j] + psi_minus[j];
        ProfileField nl = nonlinear_hat(g, psi);
        // the nonlinearity is an exact derivative: zero mass by construction
        nl[g.center()] = 0.0;
        ProfileField next = invert_L(g, nl);
        double delta = 0.0;
        for (int j = 0; j < g.n; ++j) delta = std::max(delta, std::abs(next[j] - psi_minus[j]));
        psi_minus = std::move(next);
        if (delta <= 1e-2 * tol) break;
    }
    if (it >= max_iterations)
        throw NoConvergence("fixed_point_profile: no contraction at this mass");

    for (int j = 0; j < g.n; ++j) psi[j] = A * psi0[j] + psi_minus[j];
    ProfileField lhs = apply_L(g, psi);
    ProfileField nl = nonlinear_hat(g, psi);
    double residual = 0.0;
    for (int j = 0; j < g.n; ++j) residual = std::max(residual, std::abs(lhs[j] - nl[j]));

    return {g, A, std::move(psi), std::move(psi_minus), residual, it + 1};
}

std::vector<CollapsePoint> collapse_metric(const AmplitudeTrajectory& traj,
                                           const ProfileSolution& profile,
                                           const Grid& run_grid) {
    std::vector<CollapsePoint> out;
    const double x0 = 0.5 * run_grid.length();
    std::vector<double> xis;
    for (double xi = -10.0; xi <= 10.0 + 1e-12; xi += 0.125) xis.push_back(xi);

    for (const auto& [t, phi_hat] : traj.snapshots) {
        const double scale = std::pow(t, 0.25);
        double err = 0.0;
        for (double xi : xis) {
            const double x = x0 + xi * scale;
            // spectral interpolation of the run field at x
            cdouble acc(0.0);
            for (int j = 0; j < run_grid.n(); ++j)
                acc += phi_hat.c[j] * std::polar(1.0, run_grid.wavenumber(j) * x);
            const double phi_x = std::real(acc) * run_grid.dk();
            err = std::max(err, std::abs(scale * phi_x - profile.eval(xi)));
        }
        out.push_back({t, err});
    }
    return out;
}

CollapseResult collapse_run(const CollapseConfig& config) {
    const Grid g(config.n, config.length);
    ProfileSolution prof = fixed_point_profile(config.A);

    RealField phi0(g);
    if (config.start_from_profile) {
        const double scale = std::pow(config.t_start, 0.25);
        for (int m = 0; m < g.n(); ++m) {
            const double xi = (g.x(m) - 0.5 * g.length()) / scale;
            phi0.values[m] = prof.eval(xi) / scale;
        }
    } else {
        for (int m = 0; m < g.n(); ++m) {
            const double y = (g.x(m) - 0.5 * g.length()) / config.ic_width;
            phi0.values[m] = std::exp(-y * y);
        }
        // normalize the conserved mass: phi_hat(0) = A
        SpectralField h = to_spectral(phi0);
        const double scale = config.A / std::real(h.c[0]);
        for (auto& v : phi0.values) v *= scale;
    }

    AmplitudeOptions opts;
    opts.dt = config.dt;
    opts.snapshots = true;
    opts.sample_start = std::max(1.0, config.t_start);
    opts.extra_sample_times = {10.0, 100.0, 1000.0};
    AmplitudeTrajectory traj =
        simulate_amplitude({config.t_start, phi0}, 1.0, -1.0, config.t_end, opts);

    CollapseResult res;
    res.series = collapse_metric(traj, prof, g);
    res.initial_mass = traj.samples.front().mass;
    double drift = 0.0;
    for (const auto& s : traj.samples)
        drift = std::max(drift, std::abs(s.mass - res.initial_mass));
    res.mass_drift_rel = drift / std::max(1e-300, std::abs(res.initial_mass));
    return res;
}

}  // namespace eckhaus::selfsim
