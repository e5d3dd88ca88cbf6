#include "eckhaus/profile.hpp"
#include "eckhaus/selfsim.hpp"

#include <cmath>

#include "doctest.h"
#include "eckhaus/errors.hpp"
#include "test_support.hpp"

using namespace eckhaus;
using namespace eckhaus::selfsim;

namespace {

RealField gaussian_bump(const Grid& g, double amp, double width) {
    std::vector<double> v(g.n());
    for (int m = 0; m < g.n(); ++m) {
        const double y = (g.x(m) - 0.5 * g.length()) / width;
        v[m] = amp * std::exp(-y * y);
    }
    return RealField(g, std::move(v));
}

}  // namespace

TEST_CASE("linear self-similar profile basics") {
    ProfileGrid g;
    ProfileField lin = phi_lin_hat(g);
    CHECK(std::real(lin[g.center()]) == 1.0);
    // even and real in k, hence real and even in physical space
    for (int j = 1; j < g.n; ++j) {
        CHECK(std::imag(lin[j]) == 0.0);
        if (g.n - j < g.n) CHECK(std::real(lin[j]) == doctest::Approx(std::real(lin[g.n - j])));
    }
    CHECK(eval_field(g, lin, 0.7) == doctest::Approx(eval_field(g, lin, -0.7)).epsilon(1e-12));
}

TEST_CASE("linear evolution approaches the rescaled linear profile") {
    // quartic diffusion from a unit-mass bump: T^{1/4} phi(xi T^{1/4})
    // approaches the transform of e^{-(3/4)k^4}
    const Grid g(1024, 256.0);
    RealField phi0 = gaussian_bump(g, 1.0, 1.0);
    SpectralField h = to_spectral(phi0);
    const double scale = 1.0 / std::real(h.c[0]);  // phi_hat(0) = 1
    for (auto& v : phi0.values) v *= scale;

    AmplitudeOptions opts;
    opts.dt = 0.25;
    opts.snapshots = true;
    opts.sample_start = 999.0;
    AmplitudeTrajectory traj = simulate_amplitude({0.0, phi0}, 0.75, 0.0, 1000.0, opts);
    REQUIRE(!traj.snapshots.empty());
    const auto& [T, phi_hat] = traj.snapshots.back();
    REQUIRE(T == doctest::Approx(1000.0));

    ProfileGrid pg;
    ProfileField lin = phi_lin_hat(pg);
    const double s = std::pow(T, 0.25);
    double worst = 0.0;
    for (double xi = -8.0; xi <= 8.0; xi += 0.1) {
        cdouble acc(0.0);
        for (int j = 0; j < g.n(); ++j)
            acc += phi_hat.c[j] * std::polar(1.0, g.wavenumber(j) * (0.5 * g.length() + xi * s));
        const double run_val = std::real(acc) * g.dk();
        worst = std::max(worst, std::abs(s * run_val - eval_field(pg, lin, xi)));
    }
    CHECK(worst <= 0.02);
}

TEST_CASE("amplitude equation conserves mass and decays") {
    const Grid g(512, 200.0);
    RealField phi0 = gaussian_bump(g, 0.2, 2.0);

    AmplitudeOptions opts;
    opts.dt = 0.1;
    AmplitudeTrajectory zero =
        simulate_amplitude({0.0, RealField(g)}, 0.75, -1.5 * std::sqrt(3.0), 5.0, opts);
    for (const auto& s : zero.samples) CHECK(s.sup == 0.0);

    AmplitudeTrajectory traj =
        simulate_amplitude({0.0, phi0}, 0.75, -1.5 * std::sqrt(3.0), 2000.0, opts);
    const double mass0 = traj.samples.front().mass;
    for (const auto& s : traj.samples)
        CHECK(std::abs(s.mass - mass0) <= 1e-12 * std::abs(mass0));

    // sup-norm decay exponent ~ 1/4 on the late window
    std::vector<double> ts, sups;
    for (const auto& s : traj.samples)
        if (s.t >= 100.0) {
            ts.push_back(1.0 + s.t);
            sups.push_back(s.sup);
        }
    REQUIRE(ts.size() >= 8);
    const double alpha = -testsupport::loglog_slope(ts, sups);
    CHECK(alpha == doctest::Approx(0.25).epsilon(0.2));

    CHECK_THROWS_AS(simulate_amplitude({0.0, phi0}, -1.0, -1.0, 1.0, opts),
                    DegenerateCoefficients);
}

TEST_CASE("canonical rescale factors") {
    ScaleFactors triv = canonical_rescale(1.0, -1.0);
    CHECK(triv.a == doctest::Approx(1.0));
    CHECK(triv.b == doctest::Approx(1.0));
    CHECK(triv.c == doctest::Approx(1.0));

    const double nu1 = 0.75, nu2 = -1.5 * std::sqrt(3.0);
    ScaleFactors f = canonical_rescale(nu1, nu2);
    CHECK(std::abs(f.c * nu1 / std::pow(f.b, 4) - 1.0) <= 1e-14);
    CHECK(std::abs(f.c * nu2 / (f.a * std::pow(f.b, 3)) + 1.0) <= 1e-14);

    CHECK_THROWS_AS(canonical_rescale(0.0, -1.0), DegenerateCoefficients);
    CHECK_THROWS_AS(canonical_rescale(1.0, 0.0), DegenerateCoefficients);
}

TEST_CASE("rescaled numerical solution satisfies the canonical equation") {
    const double nu1 = 0.75, nu2 = -1.5 * std::sqrt(3.0);
    const ScaleFactors f = canonical_rescale(nu1, nu2);

    const Grid g(512, 200.0);
    RealField phi0 = gaussian_bump(g, 0.01, 3.0);
    AmplitudeStepper stepper(g, nu1, nu2, 0.01);
    stepper.set_state({0.0, phi0});
    for (int i = 0; i < 500; ++i) stepper.step();

    // u(Y, S) = a phi(b Y, c S); with b = 1 three consecutive states give a
    // centered S-derivative with dS = dt / c
    SpectralField h1 = stepper.phi_hat();
    stepper.step();
    SpectralField h2 = stepper.phi_hat();
    stepper.step();
    SpectralField h3 = stepper.phi_hat();
    const double dS = 0.01 / f.c;

    RealField u1 = from_spectral(h1), u3 = from_spectral(h3);
    SpectralField u2_hat = h2;
    for (auto& z : u2_hat.c) z *= f.a;
    RealField d4u = from_spectral(derivative(u2_hat, 4));
    RealField du = from_spectral(derivative(u2_hat, 1));
    std::vector<double> sq(g.n());
    for (int m = 0; m < g.n(); ++m) sq[m] = du.values[m] * du.values[m];
    RealField dsq = from_spectral(derivative(to_spectral(RealField(g, sq)), 1));

    double worst = 0.0;
    for (int m = 0; m < g.n(); ++m) {
        const double ut = f.a * (u3.values[m] - u1.values[m]) / (2.0 * dS);
        const double resid = ut + d4u.values[m] + dsq.values[m];
        worst = std::max(worst, std::abs(resid));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("profile operator eigenpairs") {
    ProfileGrid g;
    for (int s = 0; s <= 3; ++s) {
        ProfileField u(g.n);
        for (int j = 0; j < g.n; ++j)
            u[j] = std::pow(g.k(j), s) * std::exp(-std::pow(g.k(j), 4));
        ProfileField lu = apply_L(g, u);
        double worst = 0.0;
        for (int j = 0; j < g.n; ++j)
            worst = std::max(worst, std::abs(lu[j] + 0.25 * s * u[j]));
        CHECK(worst <= 1e-8);
    }

    // linearity
    ProfileField a = psi0_hat(g), b = phi_lin_hat(g), mix(g.n);
    for (int j = 0; j < g.n; ++j) mix[j] = 2.0 * a[j] - 3.0 * b[j];
    ProfileField la = apply_L(g, a), lb = apply_L(g, b), lmix = apply_L(g, mix);
    for (int j = 0; j < g.n; j += 97)
        CHECK(std::abs(lmix[j] - (2.0 * la[j] - 3.0 * lb[j])) <= 1e-13);
}

TEST_CASE("inverse of the profile operator") {
    ProfileGrid g;
    // forward-operator oracle: f = L psi2 with psi2 = k^2 e^{-k^4}
    ProfileField psi2(g.n);
    for (int j = 0; j < g.n; ++j)
        psi2[j] = std::pow(g.k(j), 2) * std::exp(-std::pow(g.k(j), 4));
    ProfileField f = apply_L(g, psi2);
    ProfileField back = invert_L(g, f);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(back[j] - psi2[j]));
    CHECK(worst <= 1e-8);

    // L(invert_L(f)) = f for a generic mass-free input
    ProfileField w(g.n);
    for (int j = 0; j < g.n; ++j)
        w[j] = g.k(j) * std::exp(-std::pow(g.k(j), 4)) * (1.0 + 0.3 * std::sin(3.0 * g.k(j)));
    ProfileField lw = apply_L(g, invert_L(g, w));
    worst = 0.0;
    for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(lw[j] - w[j]));
    CHECK(worst <= 1e-10);

    ProfileField zero(g.n, cdouble(0.0));
    ProfileField iz = invert_L(g, zero);
    for (const auto& z : iz) CHECK(std::abs(z) == 0.0);

    ProfileField bad(g.n, cdouble(0.0));
    bad[g.center()] = 0.1;
    CHECK_THROWS_AS(invert_L(g, bad), MassNotZero);
}

TEST_CASE("mass projection") {
    ProfileGrid g;
    ProfileField u = psi0_hat(g);
    MassSplit s = p0_project(g, u);
    for (int j = 0; j < g.n; ++j) CHECK(std::abs(s.remainder[j]) == 0.0);

    // mass-free input passes through untouched
    ProfileField w(g.n);
    for (int j = 0; j < g.n; ++j) w[j] = g.k(j) * std::exp(-std::pow(g.k(j), 4));
    MassSplit sw = p0_project(g, w);
    for (int j = 0; j < g.n; ++j) CHECK(std::abs(sw.mass_component[j]) == 0.0);
    CHECK(std::abs(sw.remainder[g.center()]) == 0.0);

    // idempotence and complementarity on a generic field
    ProfileField r(g.n);
    for (int j = 0; j < g.n; ++j)
        r[j] = std::exp(-std::pow(g.k(j), 4)) * cdouble(1.0 + 0.2 * g.k(j), 0.1 * g.k(j));
    MassSplit sr = p0_project(g, r);
    CHECK(std::abs(sr.remainder[g.center()]) <= 1e-15);
    MassSplit again = p0_project(g, sr.remainder);
    for (int j = 0; j < g.n; j += 59)
        CHECK(std::abs(again.remainder[j] - sr.remainder[j]) <= 1e-15);

    // physical-space version: the remainder integrates to ~0
    const Grid rg(512, 100.0);
    RealField bump = gaussian_bump(rg, 0.7, 4.0);
    MassSplitReal ms = p0_project(bump);
    double rem_mass = 0.0;
    for (double v : ms.remainder.values) rem_mass += v;
    rem_mass *= rg.dx();
    double abs_mass = 0.0;
    for (double v : bump.values) abs_mass += std::abs(v);
    abs_mass *= rg.dx();
    CHECK(std::abs(rem_mass) <= 1e-12 * (1.0 + abs_mass));
}

TEST_CASE("profile fixed point convergence and quadratic correction") {
    ProfileSolution zero = fixed_point_profile(0.0);
    double z = 0.0;
    for (const auto& c : zero.psi_minus_hat) z = std::max(z, std::abs(c));
    CHECK(z == 0.0);

    ProfileSolution p1 = fixed_point_profile(0.1);
    CHECK(p1.residual <= 1e-10);
    CHECK(p1.iterations <= 200);

    std::vector<double> as, norms;
    for (double A : {0.01, 0.02, 0.04}) {
        ProfileSolution p = fixed_point_profile(A);
        CHECK(p.residual <= 1e-10);
        double sup = 0.0;
        for (const auto& c : p.psi_minus_hat) sup = std::max(sup, std::abs(c));
        as.push_back(A);
        norms.push_back(sup);
    }
    const double slope = testsupport::loglog_slope(as, norms);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("collapse metric is tiny when starting on the profile") {
    CollapseConfig c;
    c.A = 0.05;
    c.t_start = 1.0;
    c.t_end = 1.0;  // no stepping: just the initial snapshot
    c.start_from_profile = true;
    CollapseResult r = collapse_run(c);
    REQUIRE(!r.series.empty());
    CHECK(r.series.front().err <= 1e-8);
}
