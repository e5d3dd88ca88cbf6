#include "eckhaus/dispersion.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "eckhaus/errors.hpp"
#include "test_support.hpp"

using namespace eckhaus;
using namespace eckhaus::dispersion;

namespace {

// Independent oracle: dense self-adjoint eigensolve of the 2x2 symbol.
std::pair<double, double> eig_oracle(double k, double q) {
    const Cmat2 m = linear_matrix(k, q);
    Eigen::Matrix2cd M;
    M << m[0], m[1], m[2], m[3];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(M);
    return {es.eigenvalues()(1), es.eigenvalues()(0)};  // ascending order
}

double mat_norm(const Cmat2& m) {
    double s = 0.0;
    for (const auto& z : m) s = std::max(s, std::abs(z));
    return s;
}

}  // namespace

TEST_CASE("linear matrix entries") {
    const double qc = critical_q();
    Cmat2 m = linear_matrix(0.0, qc);
    CHECK(std::abs(m[0] - cdouble(-4.0 / 3.0, 0.0)) < 1e-15);
    CHECK(std::abs(m[1]) == 0.0);
    CHECK(std::abs(m[2]) == 0.0);
    CHECK(std::abs(m[3]) == 0.0);

    m = linear_matrix(0.0, 0.0);
    CHECK(std::abs(m[0] - cdouble(-2.0, 0.0)) < 1e-15);
    CHECK(std::abs(m[3]) == 0.0);

    // symbol symmetry M(-k) = conj(M(k))
    for (double k : {0.1, 0.7, 2.3}) {
        Cmat2 a = linear_matrix(k, 0.4);
        Cmat2 b = linear_matrix(-k, 0.4);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(b[i] - std::conj(a[i])) < 1e-15);
    }

    CHECK_THROWS_AS(linear_matrix(0.1, 1.0), InvalidWavenumber);
    CHECK_THROWS_AS(eigenvalues(0.1, -1.2), InvalidWavenumber);
}

TEST_CASE("eigenvalue curves") {
    const double qc = critical_q();
    CHECK(eigenvalues(0.0, qc).second == doctest::Approx(-4.0 / 3.0));

    // quartic tangency: lambda1(0.05) = -3/4 k^4 + O(k^6)
    const double l1 = eigenvalues(0.05, qc).first;
    CHECK(std::abs(l1 - (-4.6875e-6)) <= 2e-8);

    // against the dense eigensolver
    CHECK(std::abs(eigenvalues(0.3, 0.5).first - eig_oracle(0.3, 0.5).first) <= 1e-12);
    CHECK(std::abs(eigenvalues(0.3, 0.5).second - eig_oracle(0.3, 0.5).second) <= 1e-12);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uq(-0.9, 0.9), uk(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double q = uq(rng), k = uk(rng);
        auto [a1, a2] = eigenvalues(k, q);
        auto [b1, b2] = eig_oracle(k, q);
        CHECK(a1 >= a2);
        CHECK(std::abs(a1 - b1) <= 1e-12);
        CHECK(std::abs(a2 - b2) <= 1e-12);
    }

    // no collision at the critical wavenumber: gap = (4/3) sqrt(1+3k^2)
    for (double k : {0.0, 0.2, 0.9, 3.0}) {
        auto [l1k, l2k] = eigenvalues(k, qc);
        CHECK(l1k - l2k == doctest::Approx(4.0 / 3.0 * std::sqrt(1.0 + 3.0 * k * k)).epsilon(1e-13));
    }
}

TEST_CASE("quartic tangency of the critical branch") {
    std::vector<double> ks, vals;
    for (int i = 0; i < 60; ++i) {
        const double k = 1e-3 * std::pow(100.0, i / 59.0);
        ks.push_back(k);
        vals.push_back(std::abs(eigenvalues(k, critical_q()).first));
    }
    CHECK(testsupport::loglog_slope(ks, vals) == doctest::Approx(4.0).epsilon(0.0025));
}

TEST_CASE("small-k curvature crosses zero at the critical wavenumber") {
    // Richardson extrapolation of -lambda1(h)/h^2 against the closed form
    for (double q : {0.0, 0.3, 0.5, 0.57}) {
        auto f = [&](double h) { return -eigenvalues(h, q).first / (h * h); };
        const double h = 5e-3;
        auto r1 = [&](double hh) { return (4.0 * f(hh) - f(2.0 * hh)) / 3.0; };
        const double c2 = (16.0 * r1(h) - r1(2.0 * h)) / 15.0;
        const double closed = (1.0 - 3.0 * q * q) / (1.0 - q * q);
        CHECK(std::abs(c2 - closed) <= 1e-8);
    }
}

TEST_CASE("stability classification") {
    CHECK(classify_stability(0.0).verdict == Stability::Stable);
    CHECK(classify_stability(critical_q()).verdict == Stability::Marginal);

    StabilityScan s = classify_stability(0.7);
    CHECK(s.verdict == Stability::Unstable);
    CHECK(s.max_growth > 0.0);
    // sup over a k-band: matches direct maximization of the closed form
    double sup = 0.0, arg = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double k = 2.0 * i / 20000.0;
        const double l = eigenvalues(k, 0.7).first;
        if (l > sup) sup = l, arg = k;
    }
    CHECK(s.max_growth == doctest::Approx(sup).epsilon(1e-6));
    CHECK(s.argmax_k == doctest::Approx(arg).epsilon(1e-3));
}

TEST_CASE("critical eigenvector series") {
    Cvec2 p0 = eigenvector_c(0.0);
    CHECK(std::abs(p0[0]) == 0.0);
    CHECK(std::abs(p0[1] - 1.0) == 0.0);

    const double s32 = std::sqrt(3.0) / 2.0;
    auto series = [&](double k) { return cdouble(0.0, -s32 * k + 0.75 * s32 * k * k * k); };
    // truncation error is |a5| k^5 with |a5| = (9/8)(sqrt3/2)
    CHECK(std::abs(eigenvector_c(0.03)[0] - series(0.03)) <= 1e-7);
    CHECK(std::abs(eigenvector_c(0.1)[0] - series(0.1)) <= 2e-5);

    // eigen residual M phi1 - lambda1 phi1 at k = 0.2
    const double k = 0.2;
    const Cmat2 m = linear_matrix(k, critical_q());
    const Cvec2 p = eigenvector_c(k);
    const double l1 = eigenvalues(k, critical_q()).first;
    const cdouble r0 = m[0] * p[0] + m[1] * p[1] - l1 * p[0];
    const cdouble r1 = m[2] * p[0] + m[3] * p[1] - l1 * p[1];
    CHECK(std::abs(r0) <= 1e-12);
    CHECK(std::abs(r1) <= 1e-12);
}

TEST_CASE("adjoint pair biorthonormality") {
    auto [s1, s2] = adjoint_pair(0.0);
    CHECK(std::abs(s1[0]) == 0.0);
    CHECK(std::abs(s1[1] - 1.0) == 0.0);

    auto [t1, t2] = adjoint_pair(0.15);
    CHECK(std::abs(dot(t1, eigenvector_s(0.15))) <= 1e-12);
    CHECK(std::abs(dot(t2, eigenvector_c(0.15))) <= 1e-12);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uk(-0.5, 0.5);
    for (int i = 0; i < 50; ++i) {
        const double k = uk(rng);
        auto [a1, a2] = adjoint_pair(k);
        CHECK(std::abs(dot(a1, eigenvector_c(k)) - 1.0) <= 1e-12);
        CHECK(std::abs(dot(a2, eigenvector_s(k)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("mode projections") {
    Grid g(64, 64.0);  // dk ~ 0.0982, several modes inside the cutoff
    ProjectionSpec spec;

    // field parallel to phi1 inside the cutoff passes through Pc unchanged
    SpectralPair v(g);
    const double k3 = g.wavenumber(3);
    REQUIRE(spec.inside(k3));
    const Cvec2 p1 = eigenvector_c(k3);
    v.vr.c[3] = cdouble(0.2, -0.1) * p1[0];
    v.vi.c[3] = cdouble(0.2, -0.1) * p1[1];
    SpectralPair pc = project_c(v, spec);
    CHECK(std::abs(pc.vr.c[3] - v.vr.c[3]) <= 1e-14);
    CHECK(std::abs(pc.vi.c[3] - v.vi.c[3]) <= 1e-14);

    // outside the cutoff Pc vanishes
    SpectralPair w(g);
    const int jhi = 20;
    REQUIRE(!spec.inside(g.wavenumber(jhi)));
    w.vr.c[jhi] = cdouble(1.0, 2.0);
    SpectralPair pcw = project_c(w, spec);
    CHECK(spectral_l1(pcw) == 0.0);

    // partition of identity and idempotence on a random pair
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SpectralPair r(g);
    for (int j = 0; j < g.n(); ++j) {
        r.vr.c[j] = cdouble(unif(rng), unif(rng));
        r.vi.c[j] = cdouble(unif(rng), unif(rng));
    }
    SpectralPair rc = project_c(r, spec);
    SpectralPair rs = project_s(r, spec);
    SpectralPair rcc = project_c(rc, spec);
    for (int j = 0; j < g.n(); ++j) {
        CHECK(std::abs(rc.vr.c[j] + rs.vr.c[j] - r.vr.c[j]) <= 1e-12);
        CHECK(std::abs(rc.vi.c[j] + rs.vi.c[j] - r.vi.c[j]) <= 1e-12);
        CHECK(std::abs(rcc.vr.c[j] - rc.vr.c[j]) <= 1e-12);
        CHECK(std::abs(rcc.vi.c[j] - rc.vi.c[j]) <= 1e-12);
    }

    // Pc(k) commutes with the symbol inside the cutoff
    for (double k : {0.05, 0.2, 0.45}) {
        const Cvec2 phi = eigenvector_c(k);
        const Cvec2 star = adjoint_pair(k).first;
        Cmat2 P = {phi[0] * std::conj(star[0]), phi[0] * std::conj(star[1]),
                   phi[1] * std::conj(star[0]), phi[1] * std::conj(star[1])};
        const Cmat2 M = linear_matrix(k, critical_q());
        Cmat2 pm, mp;
        pm[0] = P[0] * M[0] + P[1] * M[2];
        pm[1] = P[0] * M[1] + P[1] * M[3];
        pm[2] = P[2] * M[0] + P[3] * M[2];
        pm[3] = P[2] * M[1] + P[3] * M[3];
        mp[0] = M[0] * P[0] + M[1] * P[2];
        mp[1] = M[0] * P[1] + M[1] * P[3];
        mp[2] = M[2] * P[0] + M[3] * P[2];
        mp[3] = M[2] * P[1] + M[3] * P[3];
        Cmat2 diff;
        for (int i = 0; i < 4; ++i) diff[i] = pm[i] - mp[i];
        CHECK(mat_norm(diff) <= 1e-12);
    }
}

TEST_CASE("diagonalizing transform") {
    auto [s0, s0inv] = transform_S(0.0);
    CHECK(std::abs(s0[0] - 1.0) == 0.0);
    CHECK(std::abs(s0[1]) == 0.0);
    CHECK(std::abs(s0[2]) == 0.0);
    CHECK(std::abs(s0[3] - 1.0) == 0.0);

    for (double k : {0.05, 0.2, 0.8}) {
        auto [S, Sinv] = transform_S(k);
        Cmat2 prod;
        prod[0] = S[0] * Sinv[0] + S[1] * Sinv[2];
        prod[1] = S[0] * Sinv[1] + S[1] * Sinv[3];
        prod[2] = S[2] * Sinv[0] + S[3] * Sinv[2];
        prod[3] = S[2] * Sinv[1] + S[3] * Sinv[3];
        CHECK(std::abs(prod[0] - 1.0) <= 1e-12);
        CHECK(std::abs(prod[1]) <= 1e-12);
        CHECK(std::abs(prod[2]) <= 1e-12);
        CHECK(std::abs(prod[3] - 1.0) <= 1e-12);
    }

    // det(S) = 1 + (3/4)k^2 - (9/8)k^4 + O(k^6); the k^6 term caps how close
    // the truncated expansion can get, so test at k small enough for 5e-8.
    {
        const double k = 0.05;
        auto [S, Sinv] = transform_S(k);
        const cdouble det = S[0] * S[3] - S[1] * S[2];
        const double expansion = 1.0 + 0.75 * k * k - 1.125 * k * k * k * k;
        CHECK(std::abs(det - expansion) <= 5e-8);
    }
    {
        const double k = 0.04;
        auto [S, Sinv] = transform_S(k);
        const double expansion = 1.0 - 0.75 * k * k + (27.0 / 16.0) * k * k * k * k;
        CHECK(std::abs(Sinv[0] - expansion) <= 5e-8);
    }
}
