#include <algorithm>
#include <cmath>

#include "eckhaus/dispersion.hpp"
#include "eckhaus/errors.hpp"
#include "eckhaus/harness.hpp"

namespace eckhaus::harness {

namespace {

// per-snapshot norms of |k|^nu wc, with wc the vector field Wc phi1
struct SnapshotNorms {
    double linf, l1;
};

SnapshotNorms wc_norms(const SpectralField& wc, double nu) {
    const Grid& g = wc.grid;
    double linf = 0.0, l1 = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        const auto p1 = dispersion::eigenvector_c(k);
        const double phinorm = std::sqrt(std::norm(p1[0]) + std::norm(p1[1]));
        const double w = (nu == 0.0) ? 1.0 : std::pow(std::abs(k), nu);
        const double v = w * std::abs(wc.c[j]) * phinorm;
        linf = std::max(linf, v);
        l1 += v;
    }
    return {linf, l1 * g.dk()};
}

}  // namespace

WeightedNorms weighted_norms(const glsim::Trajectory& traj, const WeightedNormsConfig& config) {
    WeightedNorms out;
    out.nu_star = config.nu_star;
    if (!(config.nu_star < 4.0))
        throw ConfigError("weighted_norms: nu_star must be below 4");

    std::vector<double> nus = config.nu_list;
    if (std::find(nus.begin(), nus.end(), config.nu_star) == nus.end())
        nus.push_back(config.nu_star);

    std::map<double, double> run_a, run_b;
    for (double nu : nus) run_a[nu] = run_b[nu] = 0.0;
    double run_as = 0.0, run_bs = 0.0;

    for (const auto& snap : traj.snapshots) {
        if (!snap.has_normal_form)
            throw ConfigError("weighted_norms: snapshot lacks the normal-form fields");
        const double w = 1.0 + snap.t;
        for (double nu : nus) {
            const SnapshotNorms n = wc_norms(snap.wc, nu);
            run_a[nu] = std::max(run_a[nu], std::pow(w, nu / 4.0) * n.linf);
            run_b[nu] = std::max(run_b[nu], std::pow(w, (nu + 1.0) / 4.0) * n.l1);
        }
        run_as = std::max(run_as, std::pow(w, config.nu_star / 4.0) * spectral_linf(snap.ws));
        run_bs =
            std::max(run_bs, std::pow(w, (config.nu_star + 1.0) / 4.0) * spectral_l1(snap.ws));

        WeightedNormsRecord rec;
        rec.t = snap.t;
        rec.a_c = run_a;
        rec.b_c = run_b;
        rec.a_s = run_as;
        rec.b_s = run_bs;
        rec.R = run_a[0.0] + run_b[0.0] + run_a[config.nu_star] + run_b[config.nu_star] +
                run_as + run_bs;
        out.series.push_back(std::move(rec));
    }
    return out;
}

}  // namespace eckhaus::harness
