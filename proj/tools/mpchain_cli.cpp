// Command line surface: spectra, entropies, negativities, correlators,
// range/threshold finders, figure-preset sweeps, scaling fits, and the
// Hamiltonian / oracle self-checks. Emits CSV or JSON tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpchain/analysis.hpp"
#include "mpchain/oracle.hpp"
#include "mpchain/parallel.hpp"

namespace {

using namespace mpchain;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "Write output to PATH instead of stdout");
}

void emit(const std::vector<SweepRow>& rows, const OutputOptions& opts) {
  const std::string text =
      opts.format == "json" ? report_json(rows) : report_csv(rows);
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + opts.out_path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + opts.out_path);
}

SweepRow scalar_row(int sigma, Mode mode, double g, std::optional<long> n,
                    std::optional<int> r, const std::string& quantity,
                    std::optional<double> value, std::string error = {}) {
  SweepRow row;
  row.sigma = sigma;
  row.mode = mode;
  row.g = g;
  row.n = n;
  row.r = r;
  row.quantity = quantity;
  row.value = value;
  row.error = std::move(error);
  return row;
}

LogBase parse_log_base(const std::string& s) {
  if (s == "2") return LogBase::two;
  if (s == "e") return LogBase::e;
  throw std::invalid_argument("--log-base must be 2 or e");
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SweepSpec spec;
  spec.quantity = quantity_from_string(j.at("quantity").get<std::string>());
  spec.sigma = j.at("sigma").get<int>();
  spec.mode = mode_from_string(j.at("mode").get<std::string>());
  const auto& g = j.at("g");
  spec.g.min = g.at("min").get<double>();
  spec.g.max = g.at("max").get<double>();
  spec.g.count = g.at("count").get<int>();
  if (g.contains("scale"))
    spec.g.log_scale = g.at("scale").get<std::string>() == "log";
  if (j.contains("N")) spec.n_list = j.at("N").get<std::vector<long>>();
  if (j.contains("r")) spec.r_list = j.at("r").get<std::vector<int>>();
  if (j.contains("log_base"))
    spec.log_base = parse_log_base(j.at("log_base").get<std::string>());
  return spec;
}

int run_oracle_check(long n_max) {
  if (n_max < 3 || n_max > 8)
    throw std::invalid_argument("oracle check supports N from 3 to 8");
  const double kGrid[] = {0.0, 0.1, -0.1, 0.25, -0.25, 0.5, -0.5, 1.0};
  bool all_ok = true;
  std::printf("%-6s %-6s %-7s %-12s %-12s %s\n", "N", "sigma", "g", "rdm_diff",
              "neg_diff", "status");
  for (long n = 3; n <= n_max; ++n)
    for (int sigma : {+1, -1})
      for (double g : kGrid) {
        const ModelParams p{g, sigma};
        const DenseState st =
            p.singular_at(n) ? limiting_state(p, n, LimitBranch::sigma_minus_odd)
                             : dense_state(p, n);
        double rdm_diff =
            (dense_rdm(st, {1}) - one_site_rdm(p, n).rho).cwiseAbs().maxCoeff();
        double neg_diff = 0.0;
        for (int r = 2; r <= n; ++r) {
          const TwoSiteRDM rdm = two_site_rdm(p, r, n);
          rdm_diff = std::max(
              rdm_diff, (dense_rdm(st, {1, r}) - rdm.rho).cwiseAbs().maxCoeff());
          neg_diff = std::max(neg_diff,
                              std::abs(dense_negativity(st, 1, r).value -
                                       negativity(rdm).value));
        }
        const bool ok = rdm_diff <= 1e-12 && neg_diff <= 1e-12;
        all_ok = all_ok && ok;
        std::printf("%-6ld %-6d %-7.3g %-12.3e %-12.3e %s\n", n, sigma, g,
                    rdm_diff, neg_diff, ok ? "PASS" : "FAIL");
      }
  return all_ok ? kExitOk : kExitInternal;
}

int run_hamiltonian_check(const ModelParams& p, const HamiltonianWeights& w,
                          long n) {
  const CouplingConstants j = coupling_constants(p, w);
  std::printf("J1=%.12g J2=%.12g J3=%.12g J4=%.12g J5=%.12g J6=%.12g\n", j.j1,
              j.j2, j.j3, j.j4, j.j5, j.j6);
  const SpinFormResult sf = spin_form_local(p, w);
  std::printf("spin-form shift=%.12g residual=%.3e : %s\n", sf.shift,
              sf.residual, sf.residual <= 1e-10 ? "PASS" : "FAIL");
  bool ok = sf.residual <= 1e-10;
  if (n >= 2) {
    const DenseState st =
        p.singular_at(n) ? limiting_state(p, n, LimitBranch::sigma_minus_odd)
                         : dense_state(p, n);
    const double resid = dense_energy(st, w);
    std::printf("ground-state residual (N=%ld) = %.3e : %s\n", n, resid,
                resid <= 1e-10 ? "PASS" : "FAIL");
    ok = ok && resid <= 1e-10;
    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const ChainOperator h = assemble_chain(p, w, n);
    double min_quad = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> v(h.dimension());
      double norm2 = 0.0;
      for (double& x : v) {
        x = gauss(rng);
        norm2 += x * x;
      }
      for (double& x : v) x /= std::sqrt(norm2);
      const std::vector<double> hv = h.apply(v);
      double quad = 0.0;
      for (size_t i = 0; i < v.size(); ++i) quad += v[i] * hv[i];
      min_quad = std::min(min_quad, quad);
    }
    std::printf("min <v|H|v> over 20 random v = %.3e : %s\n", min_quad,
                min_quad >= -1e-10 ? "PASS" : "FAIL");
    ok = ok && min_quad >= -1e-10;
  }
  return ok ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact entanglement toolkit for a one-parameter spin-1 ring family"};
  app.require_subcommand(1);

  double g = 0.1;
  int sigma = +1;
  long n_sites = 0;
  int r = 2;
  std::string mode = "finite";
  std::string log_base = "2";
  OutputOptions out;

  auto add_model_flags = [&](CLI::App* cmd, bool with_n, bool with_r) {
    cmd->add_option("--g", g, "Coupling g");
    cmd->add_option("--sigma", sigma, "Sign sigma (+1 or -1)")
        ->check(CLI::IsMember({-1, 1}));
    if (with_n) cmd->add_option("--n", n_sites, "Ring size N");
    if (with_r) cmd->add_option("--r", r, "Separation r (sites 1 and r)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Transfer-matrix spectrum");
  add_model_flags(spectrum, false, false);
  add_output_flags(spectrum, out);

  auto* entropy = app.add_subcommand("entropy", "One-site entropy");
  add_model_flags(entropy, true, false);
  entropy->add_option("--mode", mode)->check(CLI::IsMember({"finite", "thermo"}));
  entropy->add_option("--log-base", log_base)->check(CLI::IsMember({"2", "e"}));
  add_output_flags(entropy, out);

  auto* negativity_cmd = app.add_subcommand("negativity", "Two-site negativity");
  add_model_flags(negativity_cmd, true, true);
  negativity_cmd->add_option("--mode", mode)
      ->check(CLI::IsMember({"finite", "thermo"}));
  add_output_flags(negativity_cmd, out);

  std::string kind = "zz";
  auto* correlator = app.add_subcommand("correlator", "Two-point correlator");
  add_model_flags(correlator, true, true);
  correlator->add_option("--kind", kind)->check(CLI::IsMember({"zz", "xy"}));
  correlator->add_option("--mode", mode)->check(CLI::IsMember({"finite", "thermo"}));
  add_output_flags(correlator, out);

  auto* range = app.add_subcommand("range", "Entanglement range (thermodynamic)");
  add_model_flags(range, false, false);
  add_output_flags(range, out);

  long cap = 500;
  auto* nmax = app.add_subcommand("nmax", "Largest entangled ring size");
  add_model_flags(nmax, false, true);
  nmax->add_option("--cap", cap, "Scan cap (default 500)");
  add_output_flags(nmax, out);

  std::string preset, spec_path;
  auto* sweep = app.add_subcommand("sweep", "Grid sweep (presets or JSON spec)");
  auto* preset_opt = sweep->add_option("--preset", preset, "fig1 .. fig6");
  auto* spec_opt = sweep->add_option("--spec", spec_path, "JSON sweep spec file");
  preset_opt->excludes(spec_opt);
  add_output_flags(sweep, out);

  std::vector<long> scaling_sizes;
  auto* scaling = app.add_subcommand("scaling", "Peak fits and data collapse");
  scaling->add_option("--sizes", scaling_sizes,
                      "Ring sizes (default 20 25 ... 85)");
  add_output_flags(scaling, out);

  std::vector<double> weights{1.0, 1.0, 1.0};
  bool check = false;
  auto* ham = app.add_subcommand("hamiltonian", "Parent-Hamiltonian checks");
  add_model_flags(ham, true, false);
  ham->add_flag("--check", check, "Run the consistency checks");
  ham->add_option("--weights", weights, "Projector weights a b c")->expected(3);

  long oracle_n = 6;
  auto* oracle = app.add_subcommand("oracle-check", "Dense-state cross checks");
  oracle->add_option("--n", oracle_n, "Largest ring size (3..8, default 6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    const ModelParams params{g, sigma};
    const LogBase base = parse_log_base(log_base);

    if (spectrum->parsed()) {
      const TransferMatrix e = transfer_matrix(build_site_matrices(params));
      const auto eig = e.eigenvalues();
      std::vector<SweepRow> rows;
      for (int i = 0; i < 4; ++i)
        rows.push_back(scalar_row(sigma, Mode::thermo, g, std::nullopt,
                                  std::nullopt, "lambda" + std::to_string(i + 1),
                                  eig[i].real()));
      emit(rows, out);
      return kExitOk;
    }
    if (entropy->parsed()) {
      std::vector<SweepRow> rows;
      if (mode == "thermo") {
        rows.push_back(scalar_row(sigma, Mode::thermo, g, std::nullopt,
                                  std::nullopt, "entropy",
                                  one_site_entropy_thermo(params, base)));
      } else {
        if (n_sites < 2) throw std::invalid_argument("--n is required (N >= 2)");
        rows.push_back(scalar_row(sigma, Mode::finite, g, n_sites, std::nullopt,
                                  "entropy", one_site_entropy(params, n_sites, base)));
      }
      emit(rows, out);
      return kExitOk;
    }
    if (negativity_cmd->parsed()) {
      std::vector<SweepRow> rows;
      if (mode == "thermo") {
        const PtSpectrum spec = pt_spectrum_thermo(params, r);
        double v = 0.0;
        for (double w : spec.omega)
          if (w < -kNegativityTol) v += -w;
        rows.push_back(scalar_row(sigma, Mode::thermo, g, std::nullopt, r,
                                  "negativity", v));
      } else {
        if (n_sites < 2) throw std::invalid_argument("--n is required (N >= 2)");
        rows.push_back(scalar_row(
            sigma, Mode::finite, g, n_sites, r, "negativity",
            mpchain::negativity(two_site_rdm(params, r, n_sites)).value));
      }
      emit(rows, out);
      return kExitOk;
    }
    if (correlator->parsed()) {
      std::optional<long> n_opt;
      if (mode == "finite") {
        if (n_sites < 2) throw std::invalid_argument("--n is required (N >= 2)");
        n_opt = n_sites;
      }
      const CorrelatorValue v = kind == "zz"
                                    ? two_point_zz(params, r, n_opt)
                                    : two_point_transverse(params, r, n_opt);
      std::vector<SweepRow> rows{scalar_row(
          sigma, n_opt ? Mode::finite : Mode::thermo, g, n_opt, r,
          kind == "zz" ? "correlator-zz" : "correlator-xy", v.value)};
      emit(rows, out);
      return kExitOk;
    }
    if (range->parsed()) {
      const EntanglementRange result = entanglement_range(params);
      std::vector<SweepRow> rows;
      rows.push_back(scalar_row(sigma, Mode::thermo, g, std::nullopt, std::nullopt,
                                "range-exact", static_cast<double>(result.exact)));
      rows.push_back(scalar_row(sigma, Mode::thermo, g, std::nullopt, std::nullopt,
                                "range-approx", result.approx));
      emit(rows, out);
      return kExitOk;
    }
    if (nmax->parsed()) {
      std::vector<SweepRow> rows;
      try {
        const std::optional<long> result =
            max_entangled_system_size(params, r, cap);
        rows.push_back(scalar_row(
            sigma, Mode::finite, g, std::nullopt, r, "nmax",
            result ? std::optional<double>(static_cast<double>(*result))
                   : std::nullopt,
            result ? "" : "never entangled"));
      } catch (const ScanCapReached& e) {
        rows.push_back(scalar_row(sigma, Mode::finite, g, std::nullopt, r,
                                  "nmax", std::nullopt,
                                  "N_max >= " + std::to_string(e.cap) +
                                      " (scan cap)"));
      }
      emit(rows, out);
      return kExitOk;
    }
    if (sweep->parsed()) {
      if (!preset.empty() && preset_is_scaling(preset)) {
        const ScalingFit fit = scaling_analysis(default_scaling_sizes());
        emit(fit.collapse_rows, out);
        return kExitOk;
      }
      std::vector<SweepSpec> specs;
      if (!preset.empty()) {
        specs = preset_specs(preset);
      } else if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) throw std::invalid_argument("cannot read spec file: " + spec_path);
        std::stringstream ss;
        ss << in.rdbuf();
        specs = {sweep_spec_from_json(ss.str())};
      } else {
        throw std::invalid_argument("sweep needs --preset or --spec");
      }
      std::vector<SweepRow> rows;
      for (const SweepSpec& s : specs) {
        const std::vector<SweepRow> part = run_sweep(s);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      emit(rows, out);
      return kExitOk;
    }
    if (scaling->parsed()) {
      const std::vector<long> sizes =
          scaling_sizes.empty() ? default_scaling_sizes() : scaling_sizes;
      const ScalingFit fit = scaling_analysis(sizes);
      nlohmann::ordered_json j;
      j["slope_gm"] = fit.slope_gm;
      j["intercept_gm"] = fit.intercept_gm;
      j["slope_Em"] = fit.slope_em;
      j["intercept_Em"] = fit.intercept_em;
      j["rss_gm"] = fit.rss_gm;
      j["rss_Em"] = fit.rss_em;
      j["collapse_scatter"] = fit.collapse_scatter;
      j["collapse_window_log10"] = {fit.collapse_window_lo, fit.collapse_window_hi};
      j["N"] = fit.n_list;
      nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
      for (size_t i = 0; i < fit.n_list.size(); ++i)
        peaks.push_back({{"N", fit.n_list[i]},
                         {"g_m", fit.peaks[i].g_m},
                         {"E_m", fit.peaks[i].e_m}});
      j["peaks"] = peaks;
      const std::string text = j.dump(1, ' ') + "\n";
      if (out.out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + out.out_path);
        f << text;
      }
      return kExitOk;
    }
    if (ham->parsed()) {
      if (!check)
        throw std::invalid_argument("hamiltonian requires --check");
      return run_hamiltonian_check(params,
                                   HamiltonianWeights{weights[0], weights[1],
                                                      weights[2]},
                                   n_sites);
    }
    if (oracle->parsed()) {
      return run_oracle_check(oracle_n);
    }
    throw std::logic_error("no subcommand dispatched");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
