// Experiment plumbing: decay-exponent fits on log-log axes, the running
// weighted-norm diagnostics of the transformed variables, the twin-run
// comparison between the full system and the scalar amplitude equation, and
// report persistence (CSV + JSON, reproducible byte-for-byte given a config).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "eckhaus/glsim.hpp"

namespace eckhaus::harness {

struct SeriesPoint {
    double t;
    double value;
};

struct DecayReport {
    std::string series_name;
    double t_lo, t_hi;
    double alpha;         // value ~ C (1+t)^{-alpha}
    double fit_residual;  // rms deviation in log space
    std::vector<SeriesPoint> used;
};

// Least squares of log(value) on log(1+t) inside [t_lo, t_hi]; needs at
// least 8 samples (WindowTooSmall) and positive values (NonPositiveValue).
DecayReport fit_decay_exponent(const std::vector<SeriesPoint>& series, double t_lo, double t_hi,
                               const std::string& name = "");

struct WeightedNormsConfig {
    std::vector<double> nu_list = {0.0, 1.0, 2.0, 3.0};
    double nu_star = 3.5;
};

struct WeightedNormsRecord {
    double t;
    std::map<double, double> a_c;  // nu -> sup_{tau<=t} max_k (1+tau)^{nu/4} |k|^nu |wc|
    std::map<double, double> b_c;  // nu -> sup_{tau<=t} (1+tau)^{(nu+1)/4} l1(|k|^nu wc)
    double a_s, b_s;
    double R;
};

struct WeightedNorms {
    double nu_star;
    std::vector<WeightedNormsRecord> series;  // running suprema, nondecreasing in t
};

// Needs snapshots with the normal-form fields; throws ConfigError otherwise.
WeightedNorms weighted_norms(const glsim::Trajectory& traj,
                             const WeightedNormsConfig& config = {});

struct ComparePoint {
    double t;
    double rel_diff;  // sup|Wc_full - phi_amp| / sup|Wc_full|
    double sup_full;
};

struct CompareResult {
    std::vector<ComparePoint> series;
    double t0;
    bool with_marginal_term;
};

// Extract the critical amplitude of a full run at t0, evolve it under the
// amplitude equation with the same grid and step, and compare at geometric
// times. with_marginal = false ablates the quadratic term (nu2 = 0).
CompareResult compare_full_vs_amplitude(const glsim::SimConfig& config, double t0 = 10.0,
                                        double t_end = 1000.0, bool with_marginal = true);

// --- report persistence -------------------------------------------------

struct ExperimentConfig {
    glsim::SimConfig sim;
    double fit_lo = 100.0;
    double fit_hi = 10000.0;
    std::vector<double> nu_list = {0.0, 1.0, 2.0, 3.0};
    double nu_star = 3.5;
    std::string out_dir = "out";
};

// Parses the JSON text of a config file; throws ConfigError naming the field.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// Runs the simulation and writes manifest.json, trajectory.csv, decay.json,
// weighted_norms.json into out_dir. The data artifacts are deterministic
// functions of the config; the manifest additionally carries the wall time.
void run_experiment(const ExperimentConfig& config);

// Sweep over q values (JSON key "q_values"); one subdirectory per member
// plus index.json, with parallelism capped by ECKHAUS_LAB_THREADS.
void run_sweep(const std::string& json_text);

std::string format_double(double v);  // 17 significant digits, round-trip exact

inline const char* version() { return "eckhaus-lab 0.1.0"; }

}  // namespace eckhaus::harness
