// Shared helpers for the unit tests: deterministic random fields, an adaptive
// Simpson quadrature used as an independent oracle, and a log-log slope fit.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "eckhaus/spectral.hpp"

namespace testsupport {

// Smooth band-limited real field with reproducible random content.
inline eckhaus::RealField random_smooth_field(const eckhaus::Grid& g, unsigned seed,
                                              double kc = 1.0, double amp = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> v(g.n(), 0.0);
    for (int m = 1; m <= 12; ++m) {
        const double k = g.dk() * m;
        const double a = amp * unif(rng) * std::exp(-(k * k) / (kc * kc));
        const double ph = unif(rng) * 3.14159;
        for (int i = 0; i < g.n(); ++i) v[i] += a * std::cos(k * g.x(i) + ph);
    }
    return eckhaus::RealField(g, std::move(v));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 28) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) {
            const double m = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - lo) / 6.0 * (flo + 4.0 * flm + fmid);
            const double right = (hi - m) / 6.0 * (fmid + 4.0 * frm + fhi);
            if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return rec(lo, m, flo, flm, fmid, left, d - 1) +
                   rec(m, hi, fmid, frm, fhi, right, d - 1);
        };
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, depth);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testsupport
