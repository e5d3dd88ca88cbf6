// The scalar amplitude equation d_T phi = -nu1 d^4_X phi + nu2 d_X((d_X phi)^2)
// with nu1 > 0, nu2 < 0, integrated pseudo-spectrally with exact linear flow
// (scalar ETDRK4). The k = 0 mode is invariant step by step because the
// nonlinearity is a perfect X-derivative, so the mass integral of phi is
// conserved to round-off. canonical_rescale maps the coefficients to the
// normal form d_T phi = -d^4_X phi - d_X((d_X phi)^2).
#pragma once

#include <vector>

#include "eckhaus/spectral.hpp"

namespace eckhaus::selfsim {

struct AmplitudeState {
    double t;
    RealField phi;
};

struct AmplitudeOptions {
    double dt = 0.05;
    bool dealias = true;
    double sample_start = 1.0;
    double sample_ratio = 1.25;
    bool snapshots = false;
    std::vector<double> extra_sample_times;  // snapped to step boundaries
};

struct AmplitudeSample {
    double t;
    double sup;     // max |phi|
    double mass;    // dx * sum phi  (= 2 pi phi_hat(0))
    double l1_hat;
};

struct AmplitudeTrajectory {
    std::vector<AmplitudeSample> samples;
    std::vector<std::pair<double, SpectralField>> snapshots;
};

class AmplitudeStepper {
  public:
    AmplitudeStepper(const Grid& grid, double nu1, double nu2, double dt, bool dealias = true);

    double time() const { return t_; }
    const SpectralField& phi_hat() const { return phi_; }
    void set_state(const AmplitudeState& s);
    void set_spectral(double t, const SpectralField& phi_hat);
    void step();  // throws NonFinite on blow-up

  private:
    SpectralField nonlinearity_hat(const SpectralField& phi) const;

    Grid grid_;
    double nu2_;
    double dt_;
    bool dealias_;
    double t_ = 0.0;
    SpectralField phi_;
    std::vector<double> e_, e2_, q_, f1_, f2_, f3_;  // per-mode scalar tables
};

// throws DegenerateCoefficients when nu1 <= 0
AmplitudeTrajectory simulate_amplitude(const AmplitudeState& initial, double nu1, double nu2,
                                       double t_end, const AmplitudeOptions& opts = {});

struct ScaleFactors {
    double a, b, c;  // phi -> a phi, X -> b X, T -> c T
};

// Factors mapping the (nu1, nu2) equation to the canonical one; throws
// DegenerateCoefficients when nu1 <= 0 or nu2 == 0.
ScaleFactors canonical_rescale(double nu1, double nu2);

}  // namespace eckhaus::selfsim
