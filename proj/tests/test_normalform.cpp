#include "eckhaus/normalform.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eckhaus/errors.hpp"
#include "test_support.hpp"

using namespace eckhaus;
using namespace eckhaus::normalform;

namespace {

// grid with dk = 0.01: monochromatic probes at multiples of 0.01 are exact
Grid probe_grid() { return Grid(512, 200.0 * std::numbers::pi); }

// critical-mode pair built from a band-limited scalar amplitude
SpectralPair critical_pair(const SpectralField& wc_amp) {
    const Grid& g = wc_amp.grid;
    dispersion::ProjectionSpec spec;
    SpectralPair vc(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (!spec.inside(k)) continue;
        const auto p1 = dispersion::eigenvector_c(k);
        vc.vr.c[j] = wc_amp.c[j] * p1[0];
        vc.vi.c[j] = wc_amp.c[j] * p1[1];
    }
    return vc;
}

SpectralField bump_amplitude(const Grid& g, double amp, double width) {
    std::vector<double> v(g.n());
    for (int m = 0; m < g.n(); ++m) {
        const double x = g.x(m) - 0.5 * g.length();
        v[m] = amp * std::exp(-x * x / (width * width));
    }
    SpectralField f = to_spectral(RealField(g, v));
    for (int j = 0; j < g.n(); ++j)
        if (!dispersion::ProjectionSpec{}.inside(g.wavenumber(j))) f.c[j] = 0.0;
    return f;
}

SpectralField monochromatic(const Grid& g, double amp, double k) {
    std::vector<double> v(g.n());
    for (int m = 0; m < g.n(); ++m) v[m] = amp * std::cos(k * g.x(m));
    return to_spectral(RealField(g, v));
}

double pair_l1_diff(const SpectralPair& a, const SpectralPair& b) {
    SpectralPair d = a;
    for (int j = 0; j < a.grid().n(); ++j) {
        d.vr.c[j] -= b.vr.c[j];
        d.vi.c[j] -= b.vi.c[j];
    }
    return spectral_l1(d);
}

}  // namespace

TEST_CASE("slaving solve basics") {
    const Grid g = probe_grid();
    SlavingSolution zero = slaving_solve(SpectralPair(g));
    CHECK(spectral_l1(zero.vs_star) == 0.0);
    CHECK(zero.residual <= 1e-14);

    // contraction guard
    SpectralPair big = critical_pair(bump_amplitude(g, 1.0, 30.0));
    CHECK_THROWS_AS(slaving_solve(big), NoConvergence);
}

TEST_CASE("slaved component is quadratically small") {
    const Grid g = probe_grid();
    std::vector<double> sizes, outputs;
    for (double amp : {1e-3, 1e-2, 3e-2}) {
        SpectralPair vc = critical_pair(bump_amplitude(g, amp, 30.0));
        SlavingSolution sol = slaving_solve(vc);
        CHECK(sol.residual <= 1e-11);
        sizes.push_back(spectral_l1(vc));
        outputs.push_back(spectral_l1(sol.vs_star));
    }
    const double slope = testsupport::loglog_slope(sizes, outputs);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("slaving matches the leading closed form on long waves") {
    const Grid g = probe_grid();
    const double amp = 1e-3, k = 0.05;
    SpectralField wc_hat = monochromatic(g, amp, k);
    SpectralPair vc = critical_pair(wc_hat);
    SlavingSolution sol = slaving_solve(vc);

    // scalar amplitude of the slaved part vs -(1/2) Wc^2
    RealField wc = from_spectral(wc_hat);
    std::vector<double> lead(g.n());
    for (int m = 0; m < g.n(); ++m) lead[m] = -0.5 * wc.values[m] * wc.values[m];
    SpectralField lead_hat = to_spectral(RealField(g, lead));

    SpectralField vs_scalar(g);
    for (int j = 0; j < g.n(); ++j) {
        const double kk = g.wavenumber(j);
        if (!dispersion::ProjectionSpec{}.inside(kk)) continue;
        const auto star2 = dispersion::adjoint_pair(kk).second;
        vs_scalar.c[j] = dispersion::dot(star2, {sol.vs_star.vr.c[j], sol.vs_star.vi.c[j]});
    }
    SpectralField diff = vs_scalar;
    for (int j = 0; j < g.n(); ++j) diff.c[j] -= lead_hat.c[j];
    CHECK(spectral_l1(diff) <= 0.05 * spectral_l1(lead_hat));
}

TEST_CASE("closed-form slaved expansion") {
    const Grid g = probe_grid();
    RealField zero(g);
    RealField out = vs_star_closed(zero);
    for (double v : out.values) CHECK(v == 0.0);

    const double eps = 0.02;
    RealField flat(g, std::vector<double>(g.n(), eps));
    RealField vs = vs_star_closed(flat);
    const double want = -0.5 * eps * eps - 0.125 * eps * eps * eps * eps;
    for (double v : vs.values) CHECK(v == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("closed form converges to the exact slaving on long waves") {
    const Grid g = probe_grid();
    std::vector<double> hs, errs;
    for (double h : {0.04, 0.02, 0.01}) {
        SpectralField wc_hat = monochromatic(g, h, h);
        SpectralPair vc = critical_pair(wc_hat);
        SlavingSolution sol = slaving_solve(vc);

        SpectralField closed_hat = to_spectral(vs_star_closed(from_spectral(wc_hat)));
        SpectralField vs_scalar(g);
        for (int j = 0; j < g.n(); ++j) {
            const double kk = g.wavenumber(j);
            if (!dispersion::ProjectionSpec{}.inside(kk)) continue;
            const auto star2 = dispersion::adjoint_pair(kk).second;
            vs_scalar.c[j] = dispersion::dot(star2, {sol.vs_star.vr.c[j], sol.vs_star.vi.c[j]});
        }
        SpectralField diff = vs_scalar;
        for (int j = 0; j < g.n(); ++j) diff.c[j] -= closed_hat.c[j];
        hs.push_back(h);
        errs.push_back(spectral_l1(diff) / spectral_l1(closed_hat));
    }
    CHECK(testsupport::loglog_slope(hs, errs) >= 1.0);
}

TEST_CASE("normal-form change of coordinates") {
    const Grid g = probe_grid();
    SpectralPair vc = critical_pair(bump_amplitude(g, 0.01, 30.0));

    // vs equal to the slaved value maps to ws = 0
    SlavingSolution sol = slaving_solve(vc);
    TransformedState t = to_normal_form(vc, sol.vs_star);
    CHECK(spectral_l1(t.ws) <= 1e-13);

    // vc = 0 leaves the damped part untouched
    SpectralPair vs_only(g);
    vs_only.vr.c[7] = cdouble(0.001, 0.0);
    vs_only.vr.c[g.n() - 7] = std::conj(vs_only.vr.c[7]);
    TransformedState t0 = to_normal_form(SpectralPair(g), vs_only);
    CHECK(pair_l1_diff(t0.ws, vs_only) <= 1e-14);

    // random small pair: round trip within 1e-11
    SpectralPair vs = critical_pair(bump_amplitude(g, 0.004, 15.0));
    for (int j = 0; j < g.n(); ++j) {
        vs.vr.c[j] *= cdouble(0.3, 0.1);  // make it generic
        vs.vi.c[j] *= cdouble(0.3, 0.1);
    }
    vs = dispersion::project_s(vs);
    TransformedState fwd = to_normal_form(vc, vs);
    auto [vc2, vs2] = from_normal_form(fwd);
    CHECK(pair_l1_diff(vc2, vc) <= 1e-11);
    CHECK(pair_l1_diff(vs2, vs) <= 1e-11);
}

TEST_CASE("effective quadratic term matches the marginal closed form") {
    const Grid g = probe_grid();
    SpectralField wc_hat = monochromatic(g, 0.01, 0.01);
    PolarizedParts parts = polarized_parts(wc_hat);
    SpectralField marg = marginal_term(wc_hat);
    SpectralField diff = parts.g2;
    for (int j = 0; j < g.n(); ++j) diff.c[j] -= marg.c[j];
    CHECK(spectral_l1(diff) <= 0.02 * spectral_l1(marg));
}

TEST_CASE("kernel probes") {
    const std::vector<double> ks = {0.01, 0.02, 0.04, 0.08};

    ProbeResult mstar = kernel_probe(ProbeTerm::Mstar, ks);
    CHECK(mstar.exponent == doctest::Approx(3.0).epsilon(0.034));

    ProbeResult b2 = kernel_probe(ProbeTerm::B2, ks);
    CHECK(b2.exponent >= 3.9);

    CHECK_THROWS_AS(kernel_probe(ProbeTerm::Mstar, {0.02}), FitUnstable);
    CHECK_THROWS_AS(kernel_probe(ProbeTerm::Mstar, {0.3, 0.4}), std::invalid_argument);
}

TEST_CASE("hermitian structure is preserved by the slaving") {
    const Grid g = probe_grid();
    SpectralPair vc = critical_pair(bump_amplitude(g, 0.02, 20.0));
    SlavingSolution sol = slaving_solve(vc);
    CHECK(is_hermitian(sol.vs_star.vr));
    CHECK(is_hermitian(sol.vs_star.vi));
}
