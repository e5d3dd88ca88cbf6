#include "eckhaus/glsim.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>

#include "eckhaus/errors.hpp"
#include "eckhaus/normalform.hpp"

namespace eckhaus::glsim {

namespace {

using dispersion::Cvec2;

// scalar ETDRK4 coefficient functions of z = lambda * dt; series below the
// cancellation threshold, direct formulas above it
double phi_exp_half(double z) { return std::exp(0.5 * z); }

double q_func(double z, double h) {
    // h (e^{z/2} - 1)/z = h sum_{j>=0} z^j / (2^{j+1} (j+1)!)
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

// sum_{m>=0} c_m z^m with c_m given by a callable; used for the f-functions
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

SimState initial_perturbation(const SimConfig& config) {
    if (config.delta > 0.2)
        throw DeltaTooLarge("initial_perturbation: delta exceeds the perturbative regime");
    const Grid g = config.grid();
    std::vector<double> vr(g.n(), 0.0), vi(g.n(), 0.0);
    if (config.delta == 0.0) return {0.0, RealField(g, vr), RealField(g, vi)};

    const double x0 = 0.5 * g.length();
    if (config.ic_kind == "gaussian") {
        for (int m = 0; m < g.n(); ++m) {
            const double y = (g.x(m) - x0) / config.ic_width;
            const double env = std::exp(-y * y);
            const double ph = config.ic_phase + config.ic_tilt * (g.x(m) - x0);
            vr[m] = env * std::cos(ph);
            vi[m] = env * std::sin(ph);
        }
    } else if (config.ic_kind == "random_modes") {
        std::mt19937 rng(config.seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int mode = 1; mode <= 16; ++mode) {
            const double k = g.dk() * mode;
            const double ar = unif(rng), ai = unif(rng);
            const double pr = 3.1 * unif(rng), pi = 3.1 * unif(rng);
            for (int m = 0; m < g.n(); ++m) {
                vr[m] += ar * std::cos(k * (g.x(m) - x0) + pr);
                vi[m] += ai * std::cos(k * (g.x(m) - x0) + pi);
            }
        }
        for (int m = 0; m < g.n(); ++m) {
            const double y = (g.x(m) - x0) / config.ic_width;
            const double env = std::exp(-y * y);
            vr[m] *= env;
            vi[m] *= env;
        }
    } else {
        throw ConfigError("initial_perturbation: unknown ic_kind '" + config.ic_kind + "'");
    }

    SimState s{0.0, RealField(g, std::move(vr)), RealField(g, std::move(vi))};
    SpectralPair v(to_spectral(s.vr), to_spectral(s.vi));
    SpectralField scalar = complex_hat(v);
    const double size = spectral_l1(scalar) + spectral_linf(scalar);
    const double scale = config.delta / size;
    for (auto& x : s.vr.values) x *= scale;
    for (auto& x : s.vi.values) x *= scale;
    return s;
}

std::pair<RealField, RealField> nonlinearity(const SimState& state, const SimConfig& config) {
    const Grid& g = state.vr.grid;
    std::vector<double> nr(g.n()), ni(g.n());
    for (int m = 0; m < g.n(); ++m) {
        const double vr = state.vr.values[m], vi = state.vi.values[m];
        nr[m] = -(2.0 / 3.0) * (3.0 * vr * vr + vi * vi + vr * vr * vr + vr * vi * vi);
        ni[m] = -(2.0 / 3.0) * (2.0 * vr * vi + vr * vr * vi + vi * vi * vi);
    }
    if (config.dealias == "half") {
        SpectralField fr = to_spectral(RealField(g, nr));
        SpectralField fi = to_spectral(RealField(g, ni));
        dealias_half(fr);
        dealias_half(fi);
        return {from_spectral(fr), from_spectral(fi)};
    }
    return {RealField(g, std::move(nr)), RealField(g, std::move(ni))};
}

// Per-instance FFT workspace on FFTW-aligned buffers. The transforms carry
// the library normalization: backward output is dk * sum u_hat e^{ikx},
// forward output is (dx/2pi) * sum u e^{-ikx}.
struct Simulator::Fft {
    fftw_plan fwd, bwd;
    fftw_complex* a;
    fftw_complex* b;
    int n;

    explicit Fft(int n_) : n(n_) {
        a = fftw_alloc_complex(n);
        b = fftw_alloc_complex(n);
        static std::mutex planner_mutex;
        std::lock_guard<std::mutex> lock(planner_mutex);
        fwd = fftw_plan_dft_1d(n, a, a, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, a, a, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(a);
        fftw_free(b);
    }
};

Simulator::Simulator(const SimConfig& config)
    : cfg_(config), grid_(config.grid()), v_(grid_), fft_(new Fft(config.n)), nu_(grid_),
      na_(grid_), nb_(grid_), nc_(grid_), sa_(grid_), sb_(grid_), sc_(grid_), mix_(grid_),
      tmp_(grid_) {
    if (!(cfg_.dt > 0.0)) throw ConfigError("Simulator: dt must be positive");
    if (cfg_.dt > cfg_.max_dt) throw ConfigError("Simulator: dt exceeds max_dt");
    if (cfg_.t_end < 0.0) throw ConfigError("Simulator: t_end must be nonnegative");
    if (cfg_.dealias != "half" && cfg_.dealias != "none")
        throw ConfigError("Simulator: unknown dealias rule '" + cfg_.dealias + "'");

    const int n = grid_.n();
    const double h = cfg_.dt;
    e_.resize(4 * n);
    e2_.resize(4 * n);
    q_.resize(4 * n);
    f1_.resize(4 * n);
    f2_.resize(4 * n);
    f3_.resize(4 * n);
    for (int j = 0; j < n; ++j) {
        const double k = grid_.wavenumber(j);
        auto [l1, l2] = dispersion::eigenvalues(k, cfg_.q);
        // orthonormal eigenbasis of the Hermitian symbol
        Cvec2 u1 = dispersion::eigenvector_c(k, cfg_.q);
        const double n1 = std::sqrt(std::norm(u1[0]) + std::norm(u1[1]));
        u1[0] /= n1;
        u1[1] /= n1;
        const Cvec2 u2 = {-std::conj(u1[1]), std::conj(u1[0])};

        auto fill = [&](std::vector<cdouble>& tab, double g1, double g2) {
            // g1 P1 + g2 P2 with P_i = u_i u_i^H
            tab[4 * j + 0] = g1 * u1[0] * std::conj(u1[0]) + g2 * u2[0] * std::conj(u2[0]);
            tab[4 * j + 1] = g1 * u1[0] * std::conj(u1[1]) + g2 * u2[0] * std::conj(u2[1]);
            tab[4 * j + 2] = g1 * u1[1] * std::conj(u1[0]) + g2 * u2[1] * std::conj(u2[0]);
            tab[4 * j + 3] = g1 * u1[1] * std::conj(u1[1]) + g2 * u2[1] * std::conj(u2[1]);
        };
        const double z1 = l1 * h, z2 = l2 * h;
        fill(e_, std::exp(z1), std::exp(z2));
        fill(e2_, phi_exp_half(z1), phi_exp_half(z2));
        fill(q_, q_func(z1, h), q_func(z2, h));
        fill(f1_, f1_func(z1, h), f1_func(z2, h));
        fill(f2_, f2_func(z1, h), f2_func(z2, h));
        fill(f3_, f3_func(z1, h), f3_func(z2, h));
    }
}

Simulator::~Simulator() { delete fft_; }

SimState Simulator::state() const {
    return {t_, from_spectral(v_.vr), from_spectral(v_.vi)};
}

void Simulator::set_state(const SimState& s) {
    t_ = s.t;
    v_ = SpectralPair(to_spectral(s.vr), to_spectral(s.vi));
}

void Simulator::apply_tables(const std::vector<cdouble>& tab, const SpectralPair& in,
                             SpectralPair& out) const {
    const int n = grid_.n();
    for (int j = 0; j < n; ++j) {
        const cdouble a = in.vr.c[j], b = in.vi.c[j];
        out.vr.c[j] = tab[4 * j + 0] * a + tab[4 * j + 1] * b;
        out.vi.c[j] = tab[4 * j + 2] * a + tab[4 * j + 3] * b;
    }
}

void Simulator::nonlinearity_hat(const SpectralPair& v, SpectralPair& out) {
    const int n = grid_.n();
    auto* a = fft_->a;
    auto* b = fft_->b;
    for (int j = 0; j < n; ++j) {
        a[j][0] = std::real(v.vr.c[j]);
        a[j][1] = std::imag(v.vr.c[j]);
        b[j][0] = std::real(v.vi.c[j]);
        b[j][1] = std::imag(v.vi.c[j]);
    }
    fftw_execute_dft(fft_->bwd, a, a);
    fftw_execute_dft(fft_->bwd, b, b);
    // physical values are dk * (transform); Hermitian data leaves the
    // imaginary parts at round-off, which the real-part evaluation discards
    const double dk = grid_.dk();
    for (int m = 0; m < n; ++m) {
        const double vr = dk * a[m][0];
        const double vi = dk * b[m][0];
        a[m][0] = -(2.0 / 3.0) * (3.0 * vr * vr + vi * vi + vr * vr * vr + vr * vi * vi);
        a[m][1] = 0.0;
        b[m][0] = -(2.0 / 3.0) * (2.0 * vr * vi + vr * vr * vi + vi * vi * vi);
        b[m][1] = 0.0;
    }
    fftw_execute_dft(fft_->fwd, a, a);
    fftw_execute_dft(fft_->fwd, b, b);
    const double scale = grid_.dx() / (2.0 * std::numbers::pi);
    for (int j = 0; j < n; ++j) {
        out.vr.c[j] = scale * cdouble(a[j][0], a[j][1]);
        out.vi.c[j] = scale * cdouble(b[j][0], b[j][1]);
    }
    if (cfg_.dealias == "half") {
        dealias_half(out.vr);
        dealias_half(out.vi);
    }
}

void Simulator::step(double dt) {
    if (std::abs(dt - cfg_.dt) > 1e-12 * cfg_.dt)
        throw std::invalid_argument("Simulator::step: dt is fixed by the configuration");
    step();
}

void Simulator::step() {
    const int n = grid_.n();
    auto accumulate = [&](SpectralPair& dst) {
        for (int j = 0; j < n; ++j) {
            dst.vr.c[j] += tmp_.vr.c[j];
            dst.vi.c[j] += tmp_.vi.c[j];
        }
    };

    if (!cfg_.nonlinear) {
        apply_tables(e_, v_, tmp_);
        std::swap(v_, tmp_);
    } else {
        nonlinearity_hat(v_, nu_);
        // a = E2 v + Q Nu
        apply_tables(e2_, v_, sa_);
        apply_tables(q_, nu_, tmp_);
        accumulate(sa_);
        nonlinearity_hat(sa_, na_);
        // b = E2 v + Q Na
        apply_tables(e2_, v_, sb_);
        apply_tables(q_, na_, tmp_);
        accumulate(sb_);
        nonlinearity_hat(sb_, nb_);
        // c = E2 a + Q (2 Nb - Nu)
        apply_tables(e2_, sa_, sc_);
        for (int j = 0; j < n; ++j) {
            mix_.vr.c[j] = 2.0 * nb_.vr.c[j] - nu_.vr.c[j];
            mix_.vi.c[j] = 2.0 * nb_.vi.c[j] - nu_.vi.c[j];
        }
        apply_tables(q_, mix_, tmp_);
        accumulate(sc_);
        nonlinearity_hat(sc_, nc_);

        // v' = E v + F1 Nu + F2 (Na + Nb) + F3 Nc
        apply_tables(e_, v_, mix_);
        std::swap(v_, mix_);
        apply_tables(f1_, nu_, tmp_);
        accumulate(v_);
        for (int j = 0; j < n; ++j) {
            mix_.vr.c[j] = na_.vr.c[j] + nb_.vr.c[j];
            mix_.vi.c[j] = na_.vi.c[j] + nb_.vi.c[j];
        }
        apply_tables(f2_, mix_, tmp_);
        accumulate(v_);
        apply_tables(f3_, nc_, tmp_);
        accumulate(v_);
    }

    t_ += cfg_.dt;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(std::real(v_.vr.c[j])) || !std::isfinite(std::imag(v_.vr.c[j])) ||
            !std::isfinite(std::real(v_.vi.c[j])) || !std::isfinite(std::imag(v_.vi.c[j])))
            throw NonFinite("simulation blew up", t_);
    }
}

SpectralField complex_hat(const SpectralPair& v) {
    const Grid& g = v.grid();
    SpectralField out(g);
    for (int j = 0; j < g.n(); ++j) out.c[j] = v.vr.c[j] + cdouble(0.0, 1.0) * v.vi.c[j];
    return out;
}

ModeSplit mode_split(const SpectralPair& v, const dispersion::ProjectionSpec& spec) {
    const Grid& g = v.grid();
    ModeSplit split{SpectralField(g), SpectralField(g), SpectralPair(g)};
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        if (spec.inside(k)) {
            auto [s1, s2] = dispersion::adjoint_pair(k);
            split.wc_amp.c[j] = dispersion::dot(s1, {v.vr.c[j], v.vi.c[j]});
            split.vs_amp.c[j] = dispersion::dot(s2, {v.vr.c[j], v.vi.c[j]});
        } else {
            split.remainder.vr.c[j] = v.vr.c[j];
            split.remainder.vi.c[j] = v.vi.c[j];
        }
    }
    return split;
}

ModeSplit mode_split(const SimState& state, const dispersion::ProjectionSpec& spec) {
    return mode_split(SpectralPair(to_spectral(state.vr), to_spectral(state.vi)), spec);
}

SpectralPair reassemble(const ModeSplit& split) {
    const Grid& g = split.wc_amp.grid;
    SpectralPair out = split.remainder;
    for (int j = 0; j < g.n(); ++j) {
        const double k = g.wavenumber(j);
        const Cvec2 p1 = dispersion::eigenvector_c(k);
        const Cvec2 p2 = dispersion::eigenvector_s(k);
        out.vr.c[j] += split.wc_amp.c[j] * p1[0] + split.vs_amp.c[j] * p2[0];
        out.vi.c[j] += split.wc_amp.c[j] * p1[1] + split.vs_amp.c[j] * p2[1];
    }
    return out;
}

TrajectorySample Simulator::sample_at(double t, Snapshot* snap) const {
    TrajectorySample s{};
    s.t = t;
    const SpectralField scalar = complex_hat(v_);
    s.l1_hat = spectral_l1(scalar);
    s.linf_hat = spectral_linf(scalar);

    const dispersion::ProjectionSpec spec;
    const SpectralPair vc = dispersion::project_c(v_, spec, cfg_.q);
    const SpectralPair vs = dispersion::project_s(v_, spec, cfg_.q);
    s.l1_hat_c = spectral_l1(vc);
    s.l1_hat_s = spectral_l1(vs);

    bool has_nf = false;
    SpectralPair ws(grid_);
    const bool critical = std::abs(cfg_.q - dispersion::critical_q()) < 1e-12;
    if (critical) {
        try {
            normalform::SlavingSolution sol = normalform::slaving_solve(vc);
            for (int j = 0; j < grid_.n(); ++j) {
                ws.vr.c[j] = vs.vr.c[j] - sol.vs_star.vr.c[j];
                ws.vi.c[j] = vs.vi.c[j] - sol.vs_star.vi.c[j];
            }
            has_nf = true;
        } catch (const NoConvergence&) {
            has_nf = false;
        }
    }
    s.l1_hat_ws = has_nf ? spectral_l1(ws) : std::numeric_limits<double>::quiet_NaN();

    if (snap != nullptr) {
        ModeSplit split = mode_split(v_, spec);
        snap->t = t;
        snap->wc = std::move(split.wc_amp);
        snap->ws = std::move(ws);
        snap->vhat = v_;
        snap->has_normal_form = has_nf;
    }
    return s;
}

Trajectory Simulator::simulate() {
    Trajectory traj;
    auto record = [&]() {
        Snapshot snap{0.0, SpectralField(grid_), SpectralPair(grid_), SpectralPair(grid_), false};
        traj.samples.push_back(sample_at(t_, cfg_.snapshots ? &snap : nullptr));
        if (cfg_.snapshots) traj.snapshots.push_back(std::move(snap));
    };

    record();  // t = 0
    double next_sample = 1.0;
    long stride_count = 0;
    const double eps = 1e-9;
    while (t_ < cfg_.t_end - eps) {
        step();
        ++stride_count;
        bool due = false;
        if (cfg_.output_stride > 0) {
            due = (stride_count % cfg_.output_stride == 0);
        } else if (t_ >= next_sample - eps) {
            due = true;
            while (next_sample <= t_ + eps) next_sample *= 1.25;
        }
        if (t_ >= cfg_.t_end - eps) due = true;
        if (due) record();
    }
    return traj;
}

Trajectory simulate(const SimConfig& config) {
    Simulator sim(config);
    sim.set_state(initial_perturbation(config));
    return sim.simulate();
}

std::pair<RealField, RealField> reconstruct_A(const SimState& state, double q) {
    if (!(std::abs(q) < 1.0)) throw InvalidWavenumber("reconstruct_A: |q| must be < 1");
    const Grid& g = state.vr.grid;
    const double amp = std::sqrt(1.0 - q * q);
    std::vector<double> re(g.n()), im(g.n());
    for (int m = 0; m < g.n(); ++m) {
        const cdouble carrier = std::polar(amp, q * g.x(m));
        const cdouble a = carrier * (1.0 + cdouble(state.vr.values[m], state.vi.values[m]));
        re[m] = std::real(a);
        im[m] = std::imag(a);
    }
    return {RealField(g, std::move(re)), RealField(g, std::move(im))};
}

double pde_residual(std::span<const SimState> history, double q) {
    if (history.size() < 3)
        throw InsufficientHistory("pde_residual: need at least three stored states");
    const SimState& prev = history[history.size() - 3];
    const SimState& curr = history[history.size() - 2];
    const SimState& next = history[history.size() - 1];
    const double dt1 = curr.t - prev.t, dt2 = next.t - curr.t;
    if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-9 * dt1)
        throw InsufficientHistory("pde_residual: states must be consecutive and equally spaced");

    const Grid& g = curr.vr.grid;
    const double a = 1.0 - q * q;

    // V and its spectral X-derivatives at the middle state
    SpectralField vr_hat = to_spectral(curr.vr);
    SpectralField vi_hat = to_spectral(curr.vi);
    RealField dvr = from_spectral(derivative(vr_hat, 1));
    RealField dvi = from_spectral(derivative(vi_hat, 1));
    RealField d2vr = from_spectral(derivative(vr_hat, 2));
    RealField d2vi = from_spectral(derivative(vi_hat, 2));

    double worst = 0.0;
    for (int m = 0; m < g.n(); ++m) {
        const cdouble v(curr.vr.values[m], curr.vi.values[m]);
        const cdouble vt((next.vr.values[m] - prev.vr.values[m]) / (dt1 + dt2),
                         (next.vi.values[m] - prev.vi.values[m]) / (dt1 + dt2));
        const cdouble vx(dvr.values[m], dvi.values[m]);
        const cdouble vxx(d2vr.values[m], d2vi.values[m]);
        const cdouble one_v = 1.0 + v;
        // residual of the original equation divided by the carrier A_q:
        // d_T V - (d_X^2 V + 2iq d_X V - q^2 (1+V)) - (1+V) + (1-q^2)(1+V)|1+V|^2
        const cdouble r = vt - (vxx + cdouble(0.0, 2.0 * q) * vx - q * q * one_v) - one_v +
                          (1.0 - q * q) * one_v * std::norm(one_v);
        worst = std::max(worst, std::abs(r));
    }
    return std::sqrt(a) * worst;
}

}  // namespace eckhaus::glsim
