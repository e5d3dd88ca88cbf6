#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "eckhaus/errors.hpp"
#include "eckhaus/harness.hpp"
#include "eckhaus/selfsim.hpp"
#include "json.hpp"

namespace eckhaus::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CompareResult compare_full_vs_amplitude(const glsim::SimConfig& config, double t0, double t_end,
                                        bool with_marginal) {
    const Grid g = config.grid();
    glsim::Simulator sim(config);
    sim.set_state(glsim::initial_perturbation(config));

    const double eps = 1e-9;
    while (sim.time() < t0 - eps) sim.step();

    // scalar critical amplitude at the handover time
    glsim::ModeSplit split = glsim::mode_split(sim.spectral_state());
    const double nu2 = with_marginal ? -1.5 * std::sqrt(3.0) : 0.0;
    selfsim::AmplitudeStepper amp(g, 0.75, nu2, config.dt, config.dealias == "half");
    amp.set_spectral(sim.time(), split.wc_amp);

    CompareResult out;
    out.t0 = t0;
    out.with_marginal_term = with_marginal;

    double next_sample = sim.time() * 1.25;
    while (sim.time() < t_end - eps) {
        sim.step();
        amp.step();
        const bool due = sim.time() >= next_sample - eps || sim.time() >= t_end - eps;
        if (!due) continue;
        while (next_sample <= sim.time() + eps) next_sample *= 1.25;

        glsim::ModeSplit ms = glsim::mode_split(sim.spectral_state());
        RealField wc_full = from_spectral(ms.wc_amp);
        RealField phi = from_spectral(amp.phi_hat());
        double sup_full = 0.0, diff = 0.0;
        for (int m = 0; m < g.n(); ++m) {
            sup_full = std::max(sup_full, std::abs(wc_full.values[m]));
            diff = std::max(diff, std::abs(wc_full.values[m] - phi.values[m]));
        }
        const double rel = sup_full > 0.0 ? diff / sup_full : 0.0;
        out.series.push_back({sim.time(), rel, sup_full});
    }
    return out;
}

namespace {

const char* kSimKeys[] = {"q",       "n",       "length",  "dt",        "t_end",
                          "delta",   "ic_kind", "dealias", "output_stride", "seed",
                          "out_dir", "ic_width", "ic_tilt", "ic_phase",  "fit_lo",
                          "fit_hi",  "nu_list", "nu_star", "q_values",  "snapshots"};

void check_known_keys(const json& j) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : kSimKeys)
            if (it.key() == k) known = true;
        if (!known) throw ConfigError("config: unknown key '" + it.key() + "'");
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
    }
}

json config_echo(const ExperimentConfig& c) {
    json j;
    j["q"] = c.sim.q;
    j["n"] = c.sim.n;
    j["length"] = c.sim.length;
    j["dt"] = c.sim.dt;
    j["t_end"] = c.sim.t_end;
    j["delta"] = c.sim.delta;
    j["ic_kind"] = c.sim.ic_kind;
    j["dealias"] = c.sim.dealias;
    j["output_stride"] = c.sim.output_stride;
    j["seed"] = c.sim.seed;
    j["ic_width"] = c.sim.ic_width;
    j["ic_tilt"] = c.sim.ic_tilt;
    j["ic_phase"] = c.sim.ic_phase;
    j["fit_lo"] = c.fit_lo;
    j["fit_hi"] = c.fit_hi;
    j["nu_list"] = c.nu_list;
    j["nu_star"] = c.nu_star;
    j["out_dir"] = c.out_dir;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out.good()) throw IoError("short write to " + path.string());
}

std::string trajectory_csv(const glsim::Trajectory& traj) {
    std::string csv = "t,l1_hat,linf_hat,l1_hat_c,l1_hat_s,l1_hat_ws\n";
    for (const auto& s : traj.samples) {
        csv += format_double(s.t) + "," + format_double(s.l1_hat) + "," +
               format_double(s.linf_hat) + "," + format_double(s.l1_hat_c) + "," +
               format_double(s.l1_hat_s) + "," + format_double(s.l1_hat_ws) + "\n";
    }
    return csv;
}

json decay_json(const glsim::Trajectory& traj, const ExperimentConfig& c) {
    json out;
    auto fit_series = [&](const char* name, auto getter) {
        std::vector<SeriesPoint> pts;
        for (const auto& s : traj.samples) {
            const double v = getter(s);
            if (std::isfinite(v)) pts.push_back({s.t, v});
        }
        json entry;
        try {
            DecayReport rep = fit_decay_exponent(pts, c.fit_lo, c.fit_hi, name);
            entry["alpha"] = rep.alpha;
            entry["fit_residual"] = rep.fit_residual;
            entry["window"] = {rep.t_lo, rep.t_hi};
            entry["samples"] = rep.used.size();
        } catch (const Error& e) {
            entry["error"] = e.what();
        }
        out[name] = entry;
    };
    fit_series("l1_hat", [](const glsim::TrajectorySample& s) { return s.l1_hat; });
    fit_series("l1_hat_c", [](const glsim::TrajectorySample& s) { return s.l1_hat_c; });
    fit_series("l1_hat_s", [](const glsim::TrajectorySample& s) { return s.l1_hat_s; });
    fit_series("l1_hat_ws", [](const glsim::TrajectorySample& s) { return s.l1_hat_ws; });
    return out;
}

json weighted_norms_json(const glsim::Trajectory& traj, const ExperimentConfig& c) {
    json out;
    try {
        WeightedNormsConfig wc;
        wc.nu_list = c.nu_list;
        wc.nu_star = c.nu_star;
        WeightedNorms wn = weighted_norms(traj, wc);
        out["nu_star"] = wn.nu_star;
        json series = json::array();
        for (const auto& rec : wn.series) {
            json r;
            r["t"] = rec.t;
            for (const auto& [nu, v] : rec.a_c) r["a_c"][format_double(nu)] = v;
            for (const auto& [nu, v] : rec.b_c) r["b_c"][format_double(nu)] = v;
            r["a_s"] = rec.a_s;
            r["b_s"] = rec.b_s;
            r["R"] = rec.R;
            series.push_back(std::move(r));
        }
        out["series"] = std::move(series);
        if (!wn.series.empty()) {
            out["final_R"] = wn.series.back().R;
            out["R_ratio_vs_first"] =
                wn.series.back().R / std::max(1e-300, wn.series.front().R);
        }
    } catch (const Error& e) {
        out["error"] = e.what();
    }
    return out;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    check_known_keys(j);
    ExperimentConfig c;
    read_field(j, "q", c.sim.q);
    read_field(j, "n", c.sim.n);
    read_field(j, "length", c.sim.length);
    read_field(j, "dt", c.sim.dt);
    read_field(j, "t_end", c.sim.t_end);
    read_field(j, "delta", c.sim.delta);
    read_field(j, "ic_kind", c.sim.ic_kind);
    read_field(j, "dealias", c.sim.dealias);
    read_field(j, "output_stride", c.sim.output_stride);
    read_field(j, "seed", c.sim.seed);
    read_field(j, "ic_width", c.sim.ic_width);
    read_field(j, "ic_tilt", c.sim.ic_tilt);
    read_field(j, "ic_phase", c.sim.ic_phase);
    read_field(j, "snapshots", c.sim.snapshots);
    read_field(j, "fit_lo", c.fit_lo);
    read_field(j, "fit_hi", c.fit_hi);
    read_field(j, "nu_list", c.nu_list);
    read_field(j, "nu_star", c.nu_star);
    read_field(j, "out_dir", c.out_dir);
    if (c.sim.n < 16 || c.sim.n % 2 != 0) throw ConfigError("config: 'n' must be even and >= 16");
    if (!(c.sim.length > 0.0)) throw ConfigError("config: 'length' must be positive");
    if (!(c.sim.dt > 0.0)) throw ConfigError("config: 'dt' must be positive");
    if (c.sim.t_end < 0.0) throw ConfigError("config: 't_end' must be nonnegative");
    if (c.sim.delta < 0.0) throw ConfigError("config: 'delta' must be nonnegative");
    return c;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(j);
}

void run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    glsim::Trajectory traj = glsim::simulate(config.sim);

    fs::create_directories(config.out_dir);
    write_text(fs::path(config.out_dir) / "trajectory.csv", trajectory_csv(traj));
    write_text(fs::path(config.out_dir) / "decay.json", decay_json(traj, config).dump(2) + "\n");
    write_text(fs::path(config.out_dir) / "weighted_norms.json",
               weighted_norms_json(traj, config).dump(2) + "\n");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json manifest;
    manifest["config"] = config_echo(config);
    manifest["code_version"] = version();
    manifest["wall_time_seconds"] = wall;
    write_text(fs::path(config.out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

void run_sweep(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep config: invalid JSON: ") + e.what());
    }
    if (!j.contains("q_values") || !j.at("q_values").is_array())
        throw ConfigError("sweep config: needs an array field 'q_values'");
    std::vector<double> qs = j.at("q_values").get<std::vector<double>>();
    json base = j;
    base.erase("q_values");
    const ExperimentConfig proto = config_from_json(base);

    int max_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ECKHAUS_LAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) max_threads = cap;
    }
    max_threads = std::max(1, std::min<int>(max_threads, static_cast<int>(qs.size())));

    std::vector<ExperimentConfig> members;
    for (size_t i = 0; i < qs.size(); ++i) {
        ExperimentConfig c = proto;
        c.sim.q = qs[i];
        c.out_dir = (fs::path(proto.out_dir) / ("q_" + std::to_string(i))).string();
        members.push_back(std::move(c));
    }

    std::atomic<size_t> next{0};
    std::vector<std::string> errors(members.size());
    auto worker = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= members.size()) return;
            try {
                run_experiment(members[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < max_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // the index is written last, by the orchestrator alone
    json index = json::array();
    for (size_t i = 0; i < members.size(); ++i) {
        json entry;
        entry["q"] = qs[i];
        entry["dir"] = fs::path(members[i].out_dir).filename().string();
        if (!errors[i].empty()) entry["error"] = errors[i];
        index.push_back(std::move(entry));
    }
    fs::create_directories(proto.out_dir);
    write_text(fs::path(proto.out_dir) / "index.json", index.dump(2) + "\n");

    for (const auto& e : errors)
        if (!e.empty()) throw IoError("sweep member failed: " + e);
}

}  // namespace eckhaus::harness
