#include "eckhaus/dispersion.hpp"

#include <cmath>

#include "eckhaus/errors.hpp"

namespace eckhaus::dispersion {

namespace {

void check_q(double q) {
    if (!(std::abs(q) < 1.0))
        throw InvalidWavenumber("equilibrium wavenumber must satisfy |q| < 1");
}

}  // namespace

ProjectionSpec::ProjectionSpec(double cutoff) : k0(cutoff) {
    if (!(k0 > 0.0)) throw std::invalid_argument("ProjectionSpec: k0 must be positive");
}

Cmat2 linear_matrix(double k, double q) {
    check_q(q);
    const double a = 1.0 - q * q;
    return {cdouble(-k * k - 2.0 * a, 0.0), cdouble(0.0, -2.0 * q * k),
            cdouble(0.0, 2.0 * q * k), cdouble(-k * k, 0.0)};
}

std::pair<double, double> eigenvalues(double k, double q) {
    check_q(q);
    const double a = 1.0 - q * q;
    const double u = 4.0 * q * q * k * k;
    const double root = std::sqrt(a * a + u);
    // lambda1 = -k^2 - a + root; for small k the subtraction root - a is the
    // small quantity, so evaluate it as u / (root + a).
    const double lambda1 = -k * k + u / (root + a);
    const double lambda2 = -k * k - a - root;
    return {lambda1, lambda2};
}

StabilityScan classify_stability(double q) {
    check_q(q);
    const double a = 1.0 - q * q;
    if (std::abs(q * q - 1.0 / 3.0) <= 1e-12)
        return {Stability::Marginal, 0.0, 0.0};

    // Interior stationary point of lambda1 in u = k^2 exists iff 2q^2 > a.
    if (2.0 * q * q > a) {
        const double u_star = q * q - a * a / (4.0 * q * q);
        const double k_star = std::sqrt(u_star);
        const double growth = eigenvalues(k_star, q).first;
        // growth = (2q^2 - a)^2 / (4q^2) > 0 here
        return {Stability::Unstable, growth, k_star};
    }

    // Scan confirms sup_k lambda1 < 0 away from k = 0 and the parabolic
    // touch at the origin has the expected negative curvature coefficient.
    double sup = -1.0;
    for (int i = 1; i <= 2000; ++i) {
        const double k = 5.0 * i / 2000.0;
        sup = std::max(sup, eigenvalues(k, q).first);
    }
    const double curvature = (1.0 - 3.0 * q * q) / a;
    if (sup < -1e-12 && curvature > 0.0) return {Stability::Stable, 0.0, 0.0};
    return {Stability::Unstable, sup, 0.0};
}

Cvec2 eigenvector_c(double k, double q) {
    check_q(q);
    const double a = 1.0 - q * q;
    const double beta = 2.0 * q * k;
    const double root = std::sqrt(a * a + beta * beta);
    // (M - lambda1) phi = 0 with phi = (i beta / (m11 - lambda1), 1); the
    // denominator equals -(a + root) <= -2a, bounded away from zero.
    if (!(a + root > 0.0))
        throw NormalizationFailure("eigenvector_c: degenerate normalization");
    const cdouble first = cdouble(0.0, beta) / cdouble(-(a + root), 0.0);
    return {first, cdouble(1.0, 0.0)};
}

Cvec2 eigenvector_s(double k, double q) {
    check_q(q);
    const double a = 1.0 - q * q;
    const double beta = 2.0 * q * k;
    const double root = std::sqrt(a * a + beta * beta);
    // second row: i beta * 1 + (m22 - lambda2) * second = 0, m22 - lambda2 = a + root
    const cdouble second = cdouble(0.0, -beta) / cdouble(a + root, 0.0);
    return {cdouble(1.0, 0.0), second};
}

Cvec2 eigenvector_c(double k) { return eigenvector_c(k, critical_q()); }
Cvec2 eigenvector_s(double k) { return eigenvector_s(k, critical_q()); }

std::pair<Cvec2, Cvec2> adjoint_pair(double k, double q) {
    // M is Hermitian, so left eigenvectors are the right ones rescaled to
    // meet the biorthonormality <phi_i*, phi_j> = delta_ij.
    const Cvec2 p1 = eigenvector_c(k, q);
    const Cvec2 p2 = eigenvector_s(k, q);
    const double n1 = std::norm(p1[0]) + std::norm(p1[1]);
    const double n2 = std::norm(p2[0]) + std::norm(p2[1]);
    return {{p1[0] / n1, p1[1] / n1}, {p2[0] / n2, p2[1] / n2}};
}

std::pair<Cvec2, Cvec2> adjoint_pair(double k) { return adjoint_pair(k, critical_q()); }

SpectralPair project_c(const SpectralPair& v, const ProjectionSpec& spec, double q) {
    const Grid& g = v.grid();
    SpectralPair out(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (!spec.inside(k)) continue;
        const Cvec2 phi1 = eigenvector_c(k, q);
        const Cvec2 star1 = adjoint_pair(k, q).first;
        const cdouble amp = dot(star1, {v.vr.c[j], v.vi.c[j]});
        out.vr.c[j] = amp * phi1[0];
        out.vi.c[j] = amp * phi1[1];
    }
    return out;
}

SpectralPair project_s(const SpectralPair& v, const ProjectionSpec& spec, double q) {
    SpectralPair pc = project_c(v, spec, q);
    SpectralPair out(v.grid());
    for (int j = 0; j < v.grid().n(); ++j) {
        out.vr.c[j] = v.vr.c[j] - pc.vr.c[j];
        out.vi.c[j] = v.vi.c[j] - pc.vi.c[j];
    }
    return out;
}

std::pair<Cmat2, Cmat2> transform_S(double k) {
    const Cvec2 p1 = eigenvector_c(k);
    const Cvec2 p2 = eigenvector_s(k);
    const Cmat2 S = {p2[0], p1[0], p2[1], p1[1]};
    const cdouble det = S[0] * S[3] - S[1] * S[2];
    const Cmat2 Sinv = {S[3] / det, -S[1] / det, -S[2] / det, S[0] / det};
    return {S, Sinv};
}

}  // namespace eckhaus::dispersion
