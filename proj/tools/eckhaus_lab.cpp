// eckhaus-lab: one binary, one subcommand per experiment surface.
//
//   dispersion       eigenvalue curves to CSV
//   simulate         full perturbation run from a JSON config
//   normalform-check fitted kernel exponents + marginal-coefficient check
//   derive           exact graded derivations (latex or json)
//   profile          self-similar profile for a given mass
//   collapse         renormalized collapse diagnostics
//   decay-fit        power-law fit of a CSV series
//   sweep            q-sweep of simulate with an index
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eckhaus/derive.hpp"
#include "eckhaus/dispersion.hpp"
#include "eckhaus/errors.hpp"
#include "eckhaus/harness.hpp"
#include "eckhaus/latex.hpp"
#include "eckhaus/normalform.hpp"
#include "eckhaus/profile.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eckhaus;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw IoError("cannot write " + path);
    out << text;
}

int cmd_dispersion(double q, double kmax, int samples, const std::string& out) {
    std::string csv = "k,lambda1,lambda2\n";
    for (int i = 0; i <= samples; ++i) {
        const double k = -kmax + 2.0 * kmax * i / samples;
        auto [l1, l2] = dispersion::eigenvalues(k, q);
        csv += harness::format_double(k) + "," + harness::format_double(l1) + "," +
               harness::format_double(l2) + "\n";
    }
    write_file(out, csv);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_path) {
    harness::ExperimentConfig cfg = harness::parse_experiment_config(slurp(config_path));
    harness::run_experiment(cfg);
    std::cout << "report in " << cfg.out_dir << "\n";
    return 0;
}

int cmd_normalform_check(const std::string& out) {
    const std::vector<double> ks = {0.01, 0.02, 0.04, 0.08};
    json j;
    auto run = [&](normalform::ProbeTerm term, const char* name) {
        normalform::ProbeResult r = normalform::kernel_probe(term, ks);
        json entry;
        entry["exponent"] = r.exponent;
        entry["fit_residual"] = r.fit_residual;
        entry["k"] = r.k;
        entry["magnitude"] = r.magnitude;
        j["kernel_exponents"][name] = entry;
    };
    run(normalform::ProbeTerm::Mstar, "Mstar");
    run(normalform::ProbeTerm::B2, "B2");
    run(normalform::ProbeTerm::B3, "B3");
    run(normalform::ProbeTerm::B4, "B4");
    run(normalform::ProbeTerm::B5, "B5");

    // marginal-coefficient measurement on a long-wave probe
    const Grid g(512, 200.0 * std::numbers::pi);
    std::vector<double> v(g.n());
    for (int m = 0; m < g.n(); ++m) v[m] = 0.01 * std::cos(0.01 * g.x(m));
    SpectralField wc = to_spectral(RealField(g, v));
    normalform::PolarizedParts parts = normalform::polarized_parts(wc);
    SpectralField marg = normalform::marginal_term(wc);
    SpectralField diff = parts.g2;
    for (int i = 0; i < g.n(); ++i) diff.c[i] -= marg.c[i];
    j["marginal_rel_error"] = spectral_l1(diff) / spectral_l1(marg);

    write_file(out, j.dump(2) + "\n");
    std::cout << "wrote " << out << "\n";
    return 0;
}

json exact_scalar_json(const cas::ExactScalar& v) {
    json j;
    j["a"] = v.a().get_str();
    j["b"] = v.b().get_str();
    j["c"] = v.c().get_str();
    j["d"] = v.d().get_str();
    return j;
}

json poly_json(const cas::GradedPoly& p) {
    json terms = json::array();
    p.for_each([&](const cas::Monomial& m, const cas::ExactScalar& c) {
        json t;
        cas::GradedPoly mono;
        for (const auto& s : m) {
            json sym;
            switch (s.base) {
                case cas::SymbolBase::Vc: sym["base"] = "Vc"; break;
                case cas::SymbolBase::Vs: sym["base"] = "Vs"; break;
                case cas::SymbolBase::Wc: sym["base"] = "Wc"; break;
                case cas::SymbolBase::Ws: sym["base"] = "Ws"; break;
            }
            sym["deriv"] = s.deriv;
            t["symbols"].push_back(sym);
        }
        t["coeff"] = exact_scalar_json(c);
        terms.push_back(std::move(t));
    });
    json out;
    out["terms"] = std::move(terms);
    out["latex"] = cas::emit_latex(p);
    return out;
}

json jet_json(const cas::KJet& jet) {
    json coeffs = json::array();
    for (int n = 0; n <= jet.order(); ++n) coeffs.push_back(exact_scalar_json(jet.coeff(n)));
    return coeffs;
}

int cmd_derive(const std::string& target, const std::string& format) {
    const cas::EffectiveEquation eq = cas::derive_effective_equation();
    if (target == "eigsystem") {
        const cas::EigJets jets = cas::jet_eigsystem(7);
        json j;
        j["lambda1"] = jet_json(jets.lambda1);
        j["lambda2"] = jet_json(jets.lambda2);
        j["phi1_first"] = jet_json(jets.phi1_first);
        j["phi2_second"] = jet_json(jets.phi2_second);
        j["det"] = jet_json(jets.det);
        j["sinv_diag"] = jet_json(jets.sinv_diag);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    const cas::GradedPoly* p = nullptr;
    if (target == "s2") p = &eq.s2;
    else if (target == "s3") p = &eq.s3;
    else if (target == "s4") p = &eq.s4;
    else if (target == "s5") p = &eq.s5;
    else if (target == "vsstar") p = &eq.vs_star;
    else throw ConfigError("derive: unknown target '" + target + "'");

    if (format == "latex")
        std::cout << cas::emit_latex(*p) << "\n";
    else if (format == "json")
        std::cout << poly_json(*p).dump(2) << "\n";
    else
        throw ConfigError("derive: unknown format '" + format + "'");
    return 0;
}

int cmd_profile(double A, const std::string& out_dir) {
    selfsim::ProfileSolution p = selfsim::fixed_point_profile(A);
    fs::create_directories(out_dir);

    std::string psi_csv = "xi,psi\n";
    for (double xi = -20.0; xi <= 20.0 + 1e-12; xi += 0.05)
        psi_csv += harness::format_double(xi) + "," + harness::format_double(p.eval(xi)) + "\n";
    write_file((fs::path(out_dir) / "psi.csv").string(), psi_csv);

    std::string hat_csv = "k,re,im\n";
    for (int j = 0; j < p.grid.n; ++j)
        hat_csv += harness::format_double(p.grid.k(j)) + "," +
                   harness::format_double(std::real(p.psi_hat[j])) + "," +
                   harness::format_double(std::imag(p.psi_hat[j])) + "\n";
    write_file((fs::path(out_dir) / "psi_hat.csv").string(), hat_csv);

    json j;
    j["A"] = A;
    j["residual"] = p.residual;
    j["iterations"] = p.iterations;
    j["grid_n"] = p.grid.n;
    j["grid_kmax"] = p.grid.kmax;
    write_file((fs::path(out_dir) / "profile.json").string(), j.dump(2) + "\n");
    std::cout << "A = " << A << ": residual " << p.residual << " after " << p.iterations
              << " iterations; wrote " << out_dir << "\n";
    return 0;
}

int cmd_collapse(const std::string& config_path) {
    json j;
    try {
        j = json::parse(slurp(config_path));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("collapse config: invalid JSON: ") + e.what());
    }
    selfsim::CollapseConfig c;
    if (j.contains("A")) c.A = j.at("A").get<double>();
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("length")) c.length = j.at("length").get<double>();
    if (j.contains("dt")) c.dt = j.at("dt").get<double>();
    if (j.contains("t_end")) c.t_end = j.at("t_end").get<double>();
    if (j.contains("ic_width")) c.ic_width = j.at("ic_width").get<double>();
    std::string out_dir = j.value("out_dir", std::string("collapse_out"));

    selfsim::CollapseResult r = selfsim::collapse_run(c);
    std::string csv = "t,e\n";
    for (const auto& pt : r.series)
        csv += harness::format_double(pt.t) + "," + harness::format_double(pt.err) + "\n";
    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / "collapse.csv").string(), csv);

    json rep;
    rep["A"] = c.A;
    rep["mass_drift_rel"] = r.mass_drift_rel;
    rep["initial_mass"] = r.initial_mass;
    write_file((fs::path(out_dir) / "collapse.json").string(), rep.dump(2) + "\n");
    std::cout << "wrote " << out_dir << "\n";
    return 0;
}

int cmd_decay_fit(const std::string& csv_path, const std::string& tcol, const std::string& vcol,
                  double tlo, double thi, const std::string& out) {
    std::ifstream in(csv_path);
    if (!in.good()) throw IoError("cannot read " + csv_path);
    std::string header;
    std::getline(in, header);
    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string field;
        while (std::getline(ss, field, ',')) cols.push_back(field);
    }
    int ti = -1, vi = -1;
    for (size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == tcol) ti = static_cast<int>(i);
        if (cols[i] == vcol) vi = static_cast<int>(i);
    }
    if (ti < 0 || vi < 0) throw ConfigError("decay-fit: columns not found in header");

    std::vector<harness::SeriesPoint> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        pts.push_back({std::stod(fields.at(ti)), std::stod(fields.at(vi))});
    }
    harness::DecayReport rep = harness::fit_decay_exponent(pts, tlo, thi, vcol);
    json j;
    j["series"] = rep.series_name;
    j["alpha"] = rep.alpha;
    j["fit_residual"] = rep.fit_residual;
    j["window"] = {rep.t_lo, rep.t_hi};
    j["samples"] = rep.used.size();
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_file(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical and symbolic laboratory for periodic-wave stability "
                 "at the sideband boundary"};
    app.require_subcommand(1);

    auto* disp = app.add_subcommand("dispersion", "eigenvalue curves to CSV");
    double q = dispersion::critical_q(), kmax = 2.0;
    int samples = 400;
    std::string out = "dispersion.csv";
    disp->add_option("--q", q, "equilibrium wavenumber (|q| < 1)");
    disp->add_option("--kmax", kmax, "half-width of the k range");
    disp->add_option("--samples", samples, "sample count");
    disp->add_option("--out", out, "output CSV path");

    auto* sim = app.add_subcommand("simulate", "full perturbation run");
    std::string sim_config;
    sim->add_option("--config", sim_config, "JSON config path")->required();

    auto* nf = app.add_subcommand("normalform-check", "kernel exponents and marginal term");
    std::string nf_out = "normalform.json";
    nf->add_option("--out", nf_out, "output JSON path");

    auto* der = app.add_subcommand("derive", "exact graded derivations");
    std::string target = "s5", format = "latex";
    der->add_option("--target", target, "s2|s3|s4|s5|vsstar|eigsystem");
    der->add_option("--format", format, "latex|json");

    auto* prof = app.add_subcommand("profile", "self-similar profile");
    double A = 0.1;
    std::string prof_out = "profile_out";
    prof->add_option("--A", A, "profile mass parameter (|A| <= 0.3)");
    prof->add_option("--out", prof_out, "output directory");

    auto* col = app.add_subcommand("collapse", "renormalized collapse diagnostics");
    std::string col_config;
    col->add_option("--config", col_config, "JSON config path")->required();

    auto* fit = app.add_subcommand("decay-fit", "power-law fit of a CSV series");
    std::string fit_csv, tcol = "t", vcol = "l1_hat", fit_out;
    double tlo = 100.0, thi = 10000.0;
    fit->add_option("--csv", fit_csv, "input CSV path")->required();
    fit->add_option("--tcol", tcol, "time column name");
    fit->add_option("--vcol", vcol, "value column name");
    fit->add_option("--tlo", tlo, "window lower edge");
    fit->add_option("--thi", thi, "window upper edge");
    fit->add_option("--out", fit_out, "output JSON path (stdout when empty)");

    auto* sweep = app.add_subcommand("sweep", "q-sweep of simulate");
    std::string sweep_config;
    sweep->add_option("--config", sweep_config, "JSON config path with q_values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (disp->parsed()) return cmd_dispersion(q, kmax, samples, out);
        if (sim->parsed()) return cmd_simulate(sim_config);
        if (nf->parsed()) return cmd_normalform_check(nf_out);
        if (der->parsed()) return cmd_derive(target, format);
        if (prof->parsed()) return cmd_profile(A, prof_out);
        if (col->parsed()) return cmd_collapse(col_config);
        if (fit->parsed()) return cmd_decay_fit(fit_csv, tcol, vcol, tlo, thi, fit_out);
        if (sweep->parsed()) {
            harness::run_sweep(slurp(sweep_config));
            std::cout << "sweep complete\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
