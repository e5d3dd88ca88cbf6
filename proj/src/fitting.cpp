#include <cmath>

#include "eckhaus/errors.hpp"
#include "eckhaus/harness.hpp"

namespace eckhaus::harness {

DecayReport fit_decay_exponent(const std::vector<SeriesPoint>& series, double t_lo, double t_hi,
                               const std::string& name) {
    if (!(t_lo < t_hi)) throw WindowTooSmall("fit_decay_exponent: empty window");
    DecayReport rep;
    rep.series_name = name;
    rep.t_lo = t_lo;
    rep.t_hi = t_hi;
    for (const auto& p : series) {
        if (p.t < t_lo || p.t > t_hi) continue;
        if (!(p.value > 0.0))
            throw NonPositiveValue("fit_decay_exponent: nonpositive value at t = " +
                                   std::to_string(p.t));
        rep.used.push_back(p);
    }
    if (rep.used.size() < 8)
        throw WindowTooSmall("fit_decay_exponent: " + std::to_string(rep.used.size()) +
                             " samples in window, need 8");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(rep.used.size());
    for (const auto& p : rep.used) {
        const double x = std::log1p(p.t);
        const double y = std::log(p.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    rep.alpha = -slope;

    double rss = 0.0;
    for (const auto& p : rep.used) {
        const double fit = intercept + slope * std::log1p(p.t);
        const double d = std::log(p.value) - fit;
        rss += d * d;
    }
    rep.fit_residual = std::sqrt(rss / n);
    return rep;
}

}  // namespace eckhaus::harness
