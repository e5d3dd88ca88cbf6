#include "eckhaus/selfsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eckhaus/errors.hpp"

namespace eckhaus::selfsim {

namespace {

// scalar ETDRK4 coefficient functions, series below the cancellation regime
template <typename C>
double series_sum(double z, C coeff) {
    double acc = 0.0, zp = 1.0;
    for (int m = 0; m <= 24; ++m) {
        const double t = coeff(m) * zp;
        acc += t;
        zp *= z;
        if (std::abs(t) < 1e-20 * std::max(1e-300, std::abs(acc)) && m > 4) break;
    }
    return acc;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double q_func(double z, double h) {
    if (std::abs(z) < 0.5) {
        double term = 0.5, acc = 0.0;
        for (int j = 0; j <= 24; ++j) {
            acc += term;
            term *= 0.5 * z / (j + 2);
            if (std::abs(term) < 1e-20 * std::abs(acc)) break;
        }
        return h * acc;
    }
    return h * (std::exp(0.5 * z) - 1.0) / z;
}

double f1_func(double z, double h) {
    if (std::abs(z) < 0.5)
        return h * series_sum(z, [](int m) {
                   return 4.0 / factorial(m + 3) - 3.0 / factorial(m + 2) + 1.0 / factorial(m + 1);
               });
    const double ez = std::exp(z);
    return h * (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / (z * z * z);
}

double f2_func(double z, double h) {
    if (std::abs(z) < 0.5)
        return h * series_sum(z, [](int m) {
                   return 2.0 * (-2.0 / factorial(m + 3) + 1.0 / factorial(m + 2));
               });
    const double ez = std::exp(z);
    return h * 2.0 * (2.0 + z + ez * (-2.0 + z)) / (z * z * z);
}

double f3_func(double z, double h) {
    if (std::abs(z) < 0.5)
        return h * series_sum(z, [](int m) {
                   return 4.0 / factorial(m + 3) - 1.0 / factorial(m + 2);
               });
    const double ez = std::exp(z);
    return h * (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / (z * z * z);
}

}  // namespace

AmplitudeStepper::AmplitudeStepper(const Grid& grid, double nu1, double nu2, double dt,
                                   bool dealias)
    : grid_(grid), nu2_(nu2), dt_(dt), dealias_(dealias), phi_(grid) {
    if (!(nu1 > 0.0)) throw DegenerateCoefficients("AmplitudeStepper: nu1 must be positive");
    if (!(dt > 0.0)) throw ConfigError("AmplitudeStepper: dt must be positive");
    const int n = grid_.n();
    e_.resize(n);
    e2_.resize(n);
    q_.resize(n);
    f1_.resize(n);
    f2_.resize(n);
    f3_.resize(n);
    for (int j = 0; j < n; ++j) {
        const double k = grid_.wavenumber(j);
        const double z = -nu1 * k * k * k * k * dt;
        e_[j] = std::exp(z);
        e2_[j] = std::exp(0.5 * z);
        q_[j] = q_func(z, dt);
        f1_[j] = f1_func(z, dt);
        f2_[j] = f2_func(z, dt);
        f3_[j] = f3_func(z, dt);
    }
}

void AmplitudeStepper::set_state(const AmplitudeState& s) {
    t_ = s.t;
    phi_ = to_spectral(s.phi);
}

void AmplitudeStepper::set_spectral(double t, const SpectralField& phi_hat) {
    t_ = t;
    phi_ = phi_hat;
}

SpectralField AmplitudeStepper::nonlinearity_hat(const SpectralField& phi) const {
    RealField dphi = from_spectral(derivative(phi, 1));
    std::vector<double> sq(grid_.n());
    for (int m = 0; m < grid_.n(); ++m) sq[m] = dphi.values[m] * dphi.values[m];
    SpectralField out = to_spectral(RealField(grid_, sq));
    if (dealias_) dealias_half(out);
    out = derivative(out, 1);
    for (auto& z : out.c) z *= nu2_;
    return out;
}

void AmplitudeStepper::step() {
    const int n = grid_.n();
    auto axpy = [&](const std::vector<double>& tab, const SpectralField& x, SpectralField& y) {
        for (int j = 0; j < n; ++j) y.c[j] += tab[j] * x.c[j];
    };
    auto scale = [&](const std::vector<double>& tab, const SpectralField& x) {
        SpectralField y = x;
        for (int j = 0; j < n; ++j) y.c[j] = tab[j] * x.c[j];
        return y;
    };

    const SpectralField nu = nonlinearity_hat(phi_);
    SpectralField a = scale(e2_, phi_);
    axpy(q_, nu, a);
    const SpectralField na = nonlinearity_hat(a);
    SpectralField b = scale(e2_, phi_);
    axpy(q_, na, b);
    const SpectralField nb = nonlinearity_hat(b);
    SpectralField c = scale(e2_, a);
    SpectralField mix(grid_);
    for (int j = 0; j < n; ++j) mix.c[j] = 2.0 * nb.c[j] - nu.c[j];
    axpy(q_, mix, c);
    const SpectralField nc = nonlinearity_hat(c);

    SpectralField next = scale(e_, phi_);
    axpy(f1_, nu, next);
    SpectralField nab(grid_);
    for (int j = 0; j < n; ++j) nab.c[j] = na.c[j] + nb.c[j];
    axpy(f2_, nab, next);
    axpy(f3_, nc, next);
    phi_ = next;
    t_ += dt_;

    for (const auto& z : phi_.c)
        if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z)))
            throw NonFinite("amplitude equation blew up", t_);
}

AmplitudeTrajectory simulate_amplitude(const AmplitudeState& initial, double nu1, double nu2,
                                       double t_end, const AmplitudeOptions& opts) {
    const Grid& g = initial.phi.grid;
    AmplitudeStepper stepper(g, nu1, nu2, opts.dt, opts.dealias);
    stepper.set_state(initial);

    AmplitudeTrajectory traj;
    auto record = [&]() {
        const SpectralField& ph = stepper.phi_hat();
        RealField phys = from_spectral(ph);
        double sup = 0.0;
        for (double v : phys.values) sup = std::max(sup, std::abs(v));
        const double mass = 2.0 * std::numbers::pi * std::real(ph.c[0]);
        traj.samples.push_back({stepper.time(), sup, mass, spectral_l1(ph)});
        if (opts.snapshots) traj.snapshots.emplace_back(stepper.time(), ph);
    };

    std::vector<double> extras = opts.extra_sample_times;
    std::sort(extras.begin(), extras.end());
    size_t next_extra = 0;
    const double eps = 1e-9;

    record();
    double next_sample = opts.sample_start;
    while (next_sample <= stepper.time() + eps) next_sample *= opts.sample_ratio;
    while (stepper.time() < t_end - eps) {
        stepper.step();
        bool due = false;
        if (stepper.time() >= next_sample - eps) {
            due = true;
            while (next_sample <= stepper.time() + eps) next_sample *= opts.sample_ratio;
        }
        while (next_extra < extras.size() && extras[next_extra] <= stepper.time() + eps) {
            due = true;
            ++next_extra;
        }
        if (stepper.time() >= t_end - eps) due = true;
        if (due) record();
    }
    return traj;
}

ScaleFactors canonical_rescale(double nu1, double nu2) {
    if (!(nu1 > 0.0)) throw DegenerateCoefficients("canonical_rescale: nu1 must be positive");
    if (nu2 == 0.0) throw DegenerateCoefficients("canonical_rescale: nu2 must be nonzero");
    // with u(Y, S) = a phi(b Y, c S):
    //   u_S = -(nu1 c / b^4) u_YYYY + (nu2 c / (a b^3)) d_Y((d_Y u)^2);
    // require nu1 c / b^4 = 1 and nu2 c / (a b^3) = -1, taking b = 1.
    const double b = 1.0;
    const double c = 1.0 / nu1;
    const double a = -nu2 * c / (b * b * b);
    return {a, b, c};
}

}  // namespace eckhaus::selfsim
