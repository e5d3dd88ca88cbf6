#include "eckhaus/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eckhaus/errors.hpp"

namespace eckhaus::normalform {

namespace {

using dispersion::Cvec2;
using dispersion::dot;

struct Physical {
    std::vector<double> r, i;
};

Physical to_physical(const SpectralPair& p) {
    RealField r = from_spectral(p.vr);
    RealField i = from_spectral(p.vi);
    return {std::move(r.values), std::move(i.values)};
}

SpectralPair to_pair_spectral(const Grid& g, const Physical& ph, bool dealias) {
    SpectralField fr = to_spectral(RealField(g, ph.r));
    SpectralField fi = to_spectral(RealField(g, ph.i));
    if (dealias) {
        dealias_half(fr);
        dealias_half(fi);
    }
    return {std::move(fr), std::move(fi)};
}

// quadratic part of the perturbation nonlinearity at v = (Vr, Vi):
// -(2/3)(3 Vr^2 + Vi^2, 2 Vr Vi)
Physical quadratic_full(const Physical& v) {
    const size_t n = v.r.size();
    Physical out{std::vector<double>(n), std::vector<double>(n)};
    for (size_t m = 0; m < n; ++m) {
        const double vr = v.r[m], vi = v.i[m];
        out.r[m] = -(2.0 / 3.0) * (3.0 * vr * vr + vi * vi);
        out.i[m] = -(2.0 / 3.0) * (2.0 * vr * vi);
    }
    return out;
}

// cubic part at vc: -(2/3)(Vr^3 + Vr Vi^2, Vr^2 Vi + Vi^3)
Physical cubic_at(const Physical& v) {
    const size_t n = v.r.size();
    Physical out{std::vector<double>(n), std::vector<double>(n)};
    for (size_t m = 0; m < n; ++m) {
        const double vr = v.r[m], vi = v.i[m];
        out.r[m] = -(2.0 / 3.0) * (vr * vr * vr + vr * vi * vi);
        out.i[m] = -(2.0 / 3.0) * (vr * vr * vi + vi * vi * vi);
    }
    return out;
}

// directional derivative of the cubic part at vc in direction w
Physical cubic_directional(const Physical& vc, const Physical& w) {
    const size_t n = vc.r.size();
    Physical out{std::vector<double>(n), std::vector<double>(n)};
    for (size_t m = 0; m < n; ++m) {
        const double ar = vc.r[m], ai = vc.i[m];
        const double wr = w.r[m], wi = w.i[m];
        out.r[m] = -(2.0 / 3.0) * ((3.0 * ar * ar + ai * ai) * wr + 2.0 * ar * ai * wi);
        out.i[m] = -(2.0 / 3.0) * (2.0 * ar * ai * wr + (ar * ar + 3.0 * ai * ai) * wi);
    }
    return out;
}

// B(vc, vs) = N2(vc + vs) + C(vc) + DC(vc)[vs], transformed and dealiased
SpectralPair balance_terms(const Grid& g, const Physical& vc, const Physical& vs, bool dealias) {
    const size_t n = vc.r.size();
    Physical sum{std::vector<double>(n), std::vector<double>(n)};
    for (size_t m = 0; m < n; ++m) {
        sum.r[m] = vc.r[m] + vs.r[m];
        sum.i[m] = vc.i[m] + vs.i[m];
    }
    Physical q = quadratic_full(sum);
    Physical c3 = cubic_at(vc);
    Physical dc = cubic_directional(vc, vs);
    for (size_t m = 0; m < n; ++m) {
        q.r[m] += c3.r[m] + dc.r[m];
        q.i[m] += c3.i[m] + dc.i[m];
    }
    return to_pair_spectral(g, q, dealias);
}

// -Ls^{-1} Ps applied mode by mode
SpectralPair apply_inverse_ls_ps(const SpectralPair& f, const dispersion::ProjectionSpec& spec) {
    const Grid& g = f.grid();
    const double qc = dispersion::critical_q();
    SpectralPair out(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        const cdouble v0 = f.vr.c[j], v1 = f.vi.c[j];
        if (spec.inside(k)) {
            // range(Ps) is spanned by phi2: divide the phi2 amplitude by lambda2
            const auto star2 = dispersion::adjoint_pair(k).second;
            const Cvec2 phi2 = dispersion::eigenvector_s(k);
            const double l2 = dispersion::eigenvalues(k, qc).second;
            const cdouble amp = dot(star2, {v0, v1}) / l2;
            out.vr.c[j] = -amp * phi2[0];
            out.vi.c[j] = -amp * phi2[1];
        } else {
            // full 2x2 solve; both branches are strictly negative here
            const auto m = dispersion::linear_matrix(k, qc);
            const cdouble det = m[0] * m[3] - m[1] * m[2];
            out.vr.c[j] = -(m[3] * v0 - m[1] * v1) / det;
            out.vi.c[j] = -(-m[2] * v0 + m[0] * v1) / det;
        }
    }
    return out;
}

SpectralPair apply_ls(const SpectralPair& v, const dispersion::ProjectionSpec& spec) {
    const Grid& g = v.grid();
    SpectralPair ps = dispersion::project_s(v, spec);
    SpectralPair out(g);
    for (int j = 0; j < g.n(); ++j) {
        const auto m = dispersion::linear_matrix(g.wavenumber(j), dispersion::critical_q());
        out.vr.c[j] = m[0] * ps.vr.c[j] + m[1] * ps.vi.c[j];
        out.vi.c[j] = m[2] * ps.vr.c[j] + m[3] * ps.vi.c[j];
    }
    return out;
}

SpectralPair add(const SpectralPair& a, const SpectralPair& b, double sb = 1.0) {
    SpectralPair out = a;
    for (int j = 0; j < a.grid().n(); ++j) {
        out.vr.c[j] += sb * b.vr.c[j];
        out.vi.c[j] += sb * b.vi.c[j];
    }
    return out;
}

}  // namespace

SlavingSolution slaving_solve(const SpectralPair& vc, const SlavingOptions& opts) {
    const Grid& g = vc.grid();
    const double input_l1 = spectral_l1(vc);
    if (input_l1 > opts.max_input_l1)
        throw NoConvergence("slaving_solve: critical part too large for the contraction");

    const Physical vc_phys = to_physical(vc);
    SpectralPair vs(g);
    Physical vs_phys{std::vector<double>(g.n(), 0.0), std::vector<double>(g.n(), 0.0)};

    int it = 0;
    double delta = 0.0;
    for (; it < opts.max_iterations; ++it) {
        SpectralPair rhs =
            dispersion::project_s(balance_terms(g, vc_phys, vs_phys, opts.dealias), opts.spec);
        SpectralPair next = apply_inverse_ls_ps(rhs, opts.spec);
        delta = spectral_l1(add(next, vs, -1.0));
        vs = next;
        vs_phys = to_physical(vs);
        if (delta <= 0.05 * opts.tol) break;
    }

    SpectralPair rhs =
        dispersion::project_s(balance_terms(g, vc_phys, vs_phys, opts.dealias), opts.spec);
    const double residual = spectral_l1(add(apply_ls(vs, opts.spec), rhs));
    if (residual > std::max(opts.tol, 1e-11))
        throw NoConvergence("slaving_solve: residual " + std::to_string(residual) +
                            " after " + std::to_string(it) + " iterations");
    return {std::move(vs), it, residual};
}

RealField vs_star_closed(const RealField& wc) {
    const Grid& g = wc.grid;
    const double s3 = std::sqrt(3.0);
    SpectralField wc_hat = to_spectral(wc);
    RealField dwc = from_spectral(derivative(wc_hat, 1));

    std::vector<double> wc2(g.n());
    for (int m = 0; m < g.n(); ++m) wc2[m] = wc.values[m] * wc.values[m];
    RealField d2wc2 = from_spectral(derivative(to_spectral(RealField(g, wc2)), 2));

    std::vector<double> out(g.n());
    for (int m = 0; m < g.n(); ++m) {
        const double w = wc.values[m], dw = dwc.values[m];
        out[m] = -0.5 * wc2[m] - 0.75 * d2wc2.values[m] +
                 0.125 * (-wc2[m] * wc2[m] - 8.0 * s3 * w * w * dw - 9.0 * dw * dw);
    }
    return RealField(g, std::move(out));
}

TransformedState to_normal_form(const SpectralPair& vc, const SpectralPair& vs,
                                const SlavingOptions& opts) {
    const Grid& g = vc.grid();
    SpectralField wc(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (!opts.spec.inside(k)) continue;
        const auto star1 = dispersion::adjoint_pair(k).first;
        wc.c[j] = dot(star1, {vc.vr.c[j], vc.vi.c[j]});
    }
    SlavingSolution s = slaving_solve(vc, opts);
    return {std::move(wc), add(vs, s.vs_star, -1.0)};
}

std::pair<SpectralPair, SpectralPair> from_normal_form(const TransformedState& t,
                                                       const SlavingOptions& opts) {
    const Grid& g = t.wc.grid;
    SpectralPair vc(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (!opts.spec.inside(k)) continue;
        const auto phi1 = dispersion::eigenvector_c(k);
        vc.vr.c[j] = t.wc.c[j] * phi1[0];
        vc.vi.c[j] = t.wc.c[j] * phi1[1];
    }
    SlavingSolution s = slaving_solve(vc, opts);
    return {vc, add(t.ws, s.vs_star)};
}

SpectralField effective_nonlinearity(const SpectralField& wc_amp, const SlavingOptions& opts) {
    const Grid& g = wc_amp.grid;
    SpectralPair vc(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (!opts.spec.inside(k)) continue;
        const auto phi1 = dispersion::eigenvector_c(k);
        vc.vr.c[j] = wc_amp.c[j] * phi1[0];
        vc.vi.c[j] = wc_amp.c[j] * phi1[1];
    }
    SlavingSolution s = slaving_solve(vc, opts);

    const Physical v = to_physical(add(vc, s.vs_star));
    Physical full = quadratic_full(v);
    const Physical c3 = cubic_at(v);
    for (size_t m = 0; m < full.r.size(); ++m) {
        full.r[m] += c3.r[m];
        full.i[m] += c3.i[m];
    }
    SpectralPair nhat = to_pair_spectral(g, full, opts.dealias);

    SpectralField out(g);
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (!opts.spec.inside(k)) continue;
        const auto star1 = dispersion::adjoint_pair(k).first;
        out.c[j] = dot(star1, {nhat.vr.c[j], nhat.vi.c[j]});
    }
    return out;
}

SpectralField marginal_term(const SpectralField& wc_amp, const SlavingOptions& opts) {
    const Grid& g = wc_amp.grid;
    RealField dwc = from_spectral(derivative(wc_amp, 1));
    std::vector<double> sq(g.n());
    for (int m = 0; m < g.n(); ++m) sq[m] = dwc.values[m] * dwc.values[m];
    SpectralField sq_hat = to_spectral(RealField(g, sq));
    if (opts.dealias) dealias_half(sq_hat);
    SpectralField out = derivative(sq_hat, 1);
    const double coef = -1.5 * std::sqrt(3.0);
    for (int j = 0; j < g.n(); ++j) {
        out.c[j] *= coef;
        if (!opts.spec.inside(g.wavenumber(j))) out.c[j] = 0.0;
    }
    return out;
}

PolarizedParts polarized_parts(const SpectralField& wc_amp, const SlavingOptions& opts) {
    const Grid& g = wc_amp.grid;
    auto scaled = [&](double eps) {
        SpectralField f = wc_amp;
        for (auto& z : f.c) z *= eps;
        return effective_nonlinearity(f, opts);
    };
    SpectralField gp1 = scaled(1.0), gm1 = scaled(-1.0);
    SpectralField gp2 = scaled(2.0), gm2 = scaled(-2.0);

    PolarizedParts parts{SpectralField(g), SpectralField(g), SpectralField(g), SpectralField(g)};
    for (int j = 0; j < g.n(); ++j) {
        const cdouble s1 = gp1.c[j] + gm1.c[j];
        const cdouble s2 = gp2.c[j] + gm2.c[j];
        const cdouble d1 = gp1.c[j] - gm1.c[j];
        const cdouble d2 = gp2.c[j] - gm2.c[j];
        parts.g2.c[j] = (16.0 * s1 - s2) / 24.0;
        parts.g4.c[j] = (s2 - 4.0 * s1) / 24.0;
        parts.g3.c[j] = (32.0 * d1 - d2) / 48.0;
        parts.g5.c[j] = (d2 - 16.0 * d1) / 32.0;
    }
    return parts;
}

ProbeResult kernel_probe(ProbeTerm term, const std::vector<double>& k_list, double amplitude) {
    for (double k : k_list)
        if (!(k > 0.0) || k > 0.2)
            throw std::invalid_argument("kernel_probe: wavenumbers must lie in (0, 0.2]");
    if (k_list.size() < 2)
        throw FitUnstable("kernel_probe: need at least two probe wavenumbers");

    const Grid g(512, 200.0 * std::numbers::pi);  // dk = 0.01
    SlavingOptions opts;

    ProbeResult res;
    res.term = term;
    for (double k : k_list) {
        const int m = static_cast<int>(std::lround(k / g.dk()));
        if (m < 1) throw std::invalid_argument("kernel_probe: wavenumber below grid resolution");
        const double k_snap = g.dk() * m;

        std::vector<double> wc(g.n());
        for (int i = 0; i < g.n(); ++i) wc[i] = amplitude * std::cos(k_snap * g.x(i));
        SpectralField wc_hat = to_spectral(RealField(g, wc));

        PolarizedParts parts = polarized_parts(wc_hat, opts);
        double mag = 0.0;
        switch (term) {
            case ProbeTerm::Mstar: mag = spectral_l1(parts.g2); break;
            case ProbeTerm::B2: {
                SpectralField marg = marginal_term(wc_hat, opts);
                SpectralField diff = parts.g2;
                for (int j = 0; j < g.n(); ++j) diff.c[j] -= marg.c[j];
                mag = spectral_l1(diff);
                break;
            }
            case ProbeTerm::B3: mag = spectral_l1(parts.g3); break;
            case ProbeTerm::B4: mag = spectral_l1(parts.g4); break;
            case ProbeTerm::B5: mag = spectral_l1(parts.g5); break;
        }
        res.k.push_back(k_snap);
        res.magnitude.push_back(mag);
    }

    if (res.k.size() < 2 || res.k.front() == res.k.back())
        throw FitUnstable("kernel_probe: degenerate wavenumber list");

    // least squares on log-log axes
    const int n = static_cast<int>(res.k.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        if (!(res.magnitude[i] > 0.0))
            throw FitUnstable("kernel_probe: vanishing probe magnitude");
        const double lx = std::log(res.k[i]), ly = std::log(res.magnitude[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw FitUnstable("kernel_probe: degenerate regression");
    res.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - res.exponent * sx) / n;
    res.fit_residual = 0.0;
    for (int i = 0; i < n; ++i) {
        const double fit = intercept + res.exponent * std::log(res.k[i]);
        res.fit_residual = std::max(res.fit_residual, std::abs(std::log(res.magnitude[i]) - fit));
    }
    if (res.fit_residual > 0.35)
        throw FitUnstable("kernel_probe: regression residual too large");
    return res;
}

}  // namespace eckhaus::normalform
