#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "loglip/errors.hpp"
#include "loglip/parallel.hpp"

namespace loglip::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::vector<double> grid_or(const json& section, const char* key, std::vector<double> fallback) {
  if (!section.is_object() || !section.contains(key)) return fallback;
  return get_or<std::vector<double>>(section, key, {});
}

const json& section(const json& j, const char* key) {
  static const json empty = json::object();
  return j.is_object() && j.contains(key) ? j.at(key) : empty;
}

std::vector<double> dyadic(int lo, int hi, bool negative) {
  std::vector<double> g;
  for (int k = lo; k <= hi; ++k) g.push_back(std::ldexp(1.0, negative ? -k : k));
  return g;
}

fs::path out_dir(const ExperimentConfig& cfg, const GlobalOptions& g) {
  fs::path p = g.out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(g.out_dir);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  os << content;
}

std::string sanitize(const std::string& label) {
  std::string s = label;
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
  return s;
}

const CoefficientSpec& need_coefficient(const ExperimentConfig& cfg) {
  if (!cfg.coefficient) throw ConfigError("config: missing 'coefficient'");
  return *cfg.coefficient;
}

const Spectrum& need_spectrum(const ExperimentConfig& cfg) {
  if (!cfg.spectrum) throw ConfigError("config: missing 'spectrum'");
  return *cfg.spectrum;
}

std::uint64_t effective_seed(const ExperimentConfig& cfg, const GlobalOptions& g) { return g.seed.value_or(cfg.seed); }

ModeState random_mode_state(double lambda, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  const std::complex<double> v0(n(rng), n(rng)), v1(n(rng), n(rng));
  return mode_state_from_data(lambda, v0 / lambda, v1);
}

SpectralState initial_state(const ExperimentConfig& cfg, const Spectrum& spec, const GlobalOptions& g) {
  if (cfg.state_csv) {
    std::ifstream in(*cfg.state_csv);
    if (!in) throw ConfigError("cannot open state CSV '" + *cfg.state_csv + "'");
    return io::read_state_csv(in, spec);
  }
  const SpectralState raw = random_state(spec, cfg.data_decay, effective_seed(cfg, g));
  return cfg.sobolev_normalize ? sobolev_normalized(raw, spec, cfg.s, cfg.convention, cfg.setting) : raw;
}

CauchyProblem make_problem(const ExperimentConfig& cfg, Spectrum spec, const GlobalOptions& g) {
  SpectralState init = initial_state(cfg, spec, g);
  return CauchyProblem{std::move(spec), need_coefficient(cfg), std::move(init), cfg.s, cfg.T, cfg.convention,
                       cfg.setting};
}

/// The same generator with its truncation doubled, when the config uses one.
std::optional<Spectrum> doubled_spectrum(const json& raw) {
  const json& sj = section(raw, "spectrum");
  if (!sj.contains("generator")) return std::nullopt;
  json d = sj;
  const auto gen = sj.at("generator").get<std::string>();
  if (gen == "torus") {
    d["K"] = 2 * sj.at("K").get<int>();
  } else if (gen == "su2") {
    d["Lmax"] = 2 * sj.at("Lmax").get<int>();
  } else {
    return std::nullopt;
  }
  return io::spectrum_from_json(d);
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  c.raw = j;
  if (j.contains("coefficient")) c.coefficient = io::coefficient_from_json(j.at("coefficient"));
  if (j.contains("spectrum")) c.spectrum = io::spectrum_from_json(j.at("spectrum"));
  if (j.contains("mollifier")) c.mollifier_name = io::mollifier_from_json(j.at("mollifier")).name();
  if (j.contains("b0")) c.b0 = get_or<double>(j, "b0", 0.0);
  else if (c.coefficient) c.b0 = c.coefficient->b0();
  c.s = get_or<double>(j, "s", 0.0);
  c.T = get_or<double>(j, "T", c.coefficient ? c.coefficient->T() : 1.0);
  c.delta_margin = get_or<double>(j, "delta_margin", 0.05);
  if (j.contains("delta")) c.delta = get_or<double>(j, "delta", 0.0);
  c.convention = convention_from_string(get_or<std::string>(j, "convention", "inhomogeneous"));
  c.setting = setting_from_string(get_or<std::string>(j, "setting", "compact"));
  const json& ij = section(j, "integrator");
  if (get_or<std::string>(ij, "method", "rk4") != "rk4") throw ConfigError("integrator: only rk4 is supported");
  c.integrator.dt_max = get_or<double>(ij, "dt_max", c.integrator.dt_max);
  c.integrator.cfl_c = get_or<double>(ij, "cfl_c", c.integrator.cfl_c);
  c.integrator.store_every = get_or<std::size_t>(ij, "store_every", c.integrator.store_every);
  c.integrator.report_intervals = get_or<std::size_t>(ij, "report_intervals", c.integrator.report_intervals);
  if (!(c.integrator.dt_max > 0.0) || !(c.integrator.cfl_c > 0.0) || c.integrator.store_every == 0 ||
      c.integrator.report_intervals == 0)
    throw ConfigError("integrator: dt_max, cfl_c must be > 0 and counts >= 1");
  const json& init = section(j, "initial");
  c.data_decay = get_or<double>(init, "decay", 2.0);
  c.seed = get_or<std::uint64_t>(init, "seed", 1);
  const auto normalize = get_or<std::string>(init, "normalize", "none");
  if (normalize != "none" && normalize != "sobolev") throw ConfigError("initial.normalize: expected none or sobolev");
  c.sobolev_normalize = normalize == "sobolev";
  if (init.contains("csv")) c.state_csv = get_or<std::string>(init, "csv", "");
  c.out_dir = get_or<std::string>(section(j, "output"), "dir", "out");
  if (c.coefficient && std::abs(c.T - c.coefficient->T()) > 1e-12 * c.T && c.T > c.coefficient->T())
    throw ConfigError("config: T exceeds the coefficient domain");
  return c;
}

double chosen_delta(const ExperimentConfig& cfg, const EnergyConstants& c) {
  return cfg.delta ? *cfg.delta : (1.0 + cfg.delta_margin) * c.delta_min;
}

int cmd_constants(const ExperimentConfig& cfg, const GlobalOptions& g, std::ostream& out) {
  if (!cfg.b0) throw ConfigError("constants: b0 is required (top-level 'b0' or coefficient.b0)");
  const Mollifier psi = mollifier_by_name(cfg.mollifier_name);
  const auto c = compute_constants(psi, *cfg.b0);
  const double delta = chosen_delta(cfg, c);
  json j = io::to_json(c);
  j["psi"] = psi.name();
  j["b0"] = *cfg.b0;
  j["delta"] = delta;
  if (g.json_output) {
    out << j.dump(2) << '\n';
  } else {
    out << "psi        " << psi.name() << '\n'
        << "b0         " << io::format_double(*cfg.b0) << '\n'
        << "M1         " << io::format_double(c.M1) << '\n'
        << "M2         " << io::format_double(c.M2) << '\n'
        << "M3         " << io::format_double(c.M3) << '\n'
        << "delta_min  " << io::format_double(c.delta_min) << '\n'
        << "delta      " << io::format_double(delta) << '\n';
  }
  if (!g.out_dir.empty()) write_file(out_dir(cfg, g) / "constants.json", j.dump(2) + "\n");
  return kSuccess;
}

int cmd_solve(const ExperimentConfig& cfg, const GlobalOptions& g, std::ostream& out) {
  const CauchyProblem p = make_problem(cfg, need_spectrum(cfg), g);
  const Mollifier psi = mollifier_by_name(cfg.mollifier_name);
  const double delta = chosen_delta(cfg, compute_constants(psi, p.coefficient.b0()));
  SolveOptions opts;
  opts.threads = g.threads;
  opts.keep_trajectories = g.dump_modes;
  opts.mollifier = psi;
  const SolutionReport rep = solve_cauchy(p, cfg.integrator, delta, opts);

  const fs::path dir = out_dir(cfg, g);
  std::ostringstream csv, state;
  io::write_report_csv(csv, rep);
  io::write_state_csv(state, p.initial, p.spectrum);
  write_file(dir / "report.csv", csv.str());
  write_file(dir / "report.json", io::report_sidecar(rep, p).dump(2) + "\n");
  write_file(dir / "initial_state.csv", state.str());
  if (g.dump_modes) {
    fs::create_directories(dir / "modes");
    for (std::size_t k = 0; k < rep.trajectories.size(); ++k) {
      std::ostringstream os;
      io::write_trajectory_csv(os, rep.trajectories[k]);
      write_file(dir / "modes" / ("mode_" + sanitize(rep.trajectory_labels[k]) + ".csv"), os.str());
    }
  }
  out << "solve: " << p.spectrum.size() << " modes, delta = " << io::format_double(delta)
      << ", empirical_C = " << io::format_double(rep.empirical_C) << ", report in " << dir.string() << '\n';
  return kSuccess;
}

namespace {

struct SuiteResult {
  bool passed = true;
  std::string status = "passed";
  json checks = json::array();
  json failures = json::array();

  void add(json check, bool ok) {
    check["passed"] = ok;
    if (!ok) {
      passed = false;
      status = "failed";
      failures.push_back(check);
    }
    checks.push_back(std::move(check));
  }
};

SuiteResult suite_w_monotone(const ExperimentConfig& cfg, const GlobalOptions& g) {
  const auto& a = need_coefficient(cfg);
  const Mollifier psi = mollifier_by_name(cfg.mollifier_name);
  const auto consts = compute_constants(psi, a.b0());
  const double delta = chosen_delta(cfg, consts);
  const json& vj = section(cfg.raw, "verify");
  const auto lambdas = grid_or(vj, "lambdas", {8, 16, 32, 64, 128});
  const double tol = get_or<double>(vj, "tol_mono", 1e-6);
  if (lambdas.empty()) throw ConfigError("verify: empty lambda grid");
  SuiteResult r;
  std::vector<json> rows(lambdas.size());
  parallel_for(lambdas.size(), g.threads, [&](std::size_t i) {
    const double lambda = lambdas[i];
    const auto traj = integrate_mode(lambda, a, random_mode_state(lambda, effective_seed(cfg, g) + i), cfg.T,
                                     cfg.integrator);
    const double inc = verify_w_monotone(traj, a, psi, delta);
    const auto amp = verify_amplification(traj, a, psi, delta, cfg.T);
    rows[i] = {{"lambda", lambda}, {"max_increment", inc}, {"tol_mono", tol},
               {"amplification", amp.observed}, {"bound", amp.bound}};
  });
  for (auto& row : rows) {
    const bool ok = row["max_increment"].get<double>() <= tol &&
                    row["amplification"].get<double>() <= row["bound"].get<double>() * (1.0 + 1e-6);
    r.add(row, ok);
  }
  return r;
}

SuiteResult suite_estimates(const ExperimentConfig& cfg) {
  const auto& a = need_coefficient(cfg);
  const Mollifier psi = mollifier_by_name(cfg.mollifier_name);
  const json& vj = section(cfg.raw, "verify");
  const auto eps_grid = grid_or(vj, "epsilons", dyadic(3, 10, true));
  const double t = get_or<double>(vj, "t", 0.5);
  const double slack = get_or<double>(vj, "slack", 0.05);
  if (eps_grid.empty()) throw ConfigError("verify: empty epsilon grid");
  const auto bounds = estimate_bounds(a, psi);
  SuiteResult r;
  for (double eps : eps_grid) {
    const auto e = measure_estimates(a, psi, eps, t);
    const double le = std::abs(std::log(eps));
    const json row = {{"eps", eps},
                      {"e1_over_log", e.e1 / le},
                      {"e2_over_log", e.e2 / le},
                      {"e3_over_eps_log", e.e3 / (eps * le)},
                      {"M1_measured", bounds.M1_measured},
                      {"e3_bound", bounds.e3_bound}};
    const bool ok = e.e1 / le <= (1.0 + slack) * bounds.M1_measured &&
                    e.e2 / le <= (1.0 + slack) * bounds.M1_measured &&
                    e.e3 / (eps * le) <= (1.0 + slack) * bounds.e3_bound &&
                    std::abs(e.e1 - e.e2) <= 1e-12 * std::max(e.e1, 1e-300);
    r.add(row, ok);
  }
  return r;
}

SuiteResult suite_theorem(const ExperimentConfig& cfg, const GlobalOptions& g) {
  const Mollifier psi = mollifier_by_name(cfg.mollifier_name);
  const auto& a = need_coefficient(cfg);
  const auto consts = compute_constants(psi, a.b0());
  const double delta = chosen_delta(cfg, consts);
  const double tol = get_or<double>(section(cfg.raw, "verify"), "tol_theorem", 0.10);
  SuiteResult r;
  if (!(delta > consts.delta_min)) {
    r.passed = false;
    r.status = "inapplicable";
    r.failures.push_back({{"warning", "delta <= delta_min: the monotonicity preconditions are unmet"},
                          {"delta", delta},
                          {"delta_min", consts.delta_min}});
    return r;
  }
  SolveOptions opts;
  opts.threads = g.threads;
  opts.mollifier = psi;
  const auto base = solve_cauchy(make_problem(cfg, need_spectrum(cfg), g), cfg.integrator, delta, opts);
  json row = {{"delta", delta}, {"C_base", base.empirical_C}, {"C_t0", base.C_t.front()}};
  bool ok = verify_theorem(base);
  if (cfg.convention == SobolevConvention::inhomogeneous) ok = ok && base.C_t.front() <= 1.0 + 1e-12;
  if (auto refined_spec = doubled_spectrum(cfg.raw)) {
    const auto refined = solve_cauchy(make_problem(cfg, std::move(*refined_spec), g), cfg.integrator, delta, opts);
    const auto check = verify_theorem(base, refined, tol);
    row["C_refined"] = check.C_refined;
    row["relative_change"] = check.relative_change;
    row["tol"] = tol;
    ok = ok && check.passed;
  }
  r.add(row, ok);
  return r;
}

SuiteResult suite_contrast(const ExperimentConfig& cfg, const GlobalOptions& g) {
  const json& vj = section(cfg.raw, "verify");
  const auto grid = grid_or(vj, "contrast_lambdas", contrast_lambda_grid());
  IntegratorConfig icfg = contrast_integrator();
  icfg.dt_max = get_or<double>(vj, "contrast_dt_max", icfg.dt_max);
  const auto osc = oscillatory_hoelder_preset();
  const auto& op = std::get<HoelderCuspParams>(osc.params());
  const auto osc_rows = hoelder_contrast(op.alpha, grid, op, osc.T(), icfg, g.threads);
  const auto ll = loglip_preset();
  const auto ll_rows = amplification_curve(ll, grid, icfg, g.threads);
  const double delta = 1.05 * compute_constants(poly_bump(), ll.b0()).delta_min;
  const auto table = [](const std::vector<ContrastRow>& rows) {
    json t = json::array();
    for (const auto& row : rows)
      t.push_back({{"lambda", row.lambda},
                   {"amplification", row.amplification},
                   {"local_slope", std::isnan(row.local_slope) ? json(nullptr) : json(row.local_slope)}});
    return t;
  };
  SuiteResult r;
  r.add({{"preset", "oscillatory_hoelder"}, {"rows", table(osc_rows)}}, upper_half_slopes_nondecreasing(osc_rows));
  r.add({{"preset", "loglip"}, {"rows", table(ll_rows)}, {"slope_bound", delta * ll.T() + 0.1}},
        max_local_slope(ll_rows) <= delta * ll.T() + 0.1);
  return r;
}

std::string csv_row(std::initializer_list<double> vals) {
  std::string s;
  bool first = true;
  for (double v : vals) {
    if (!first) s += ',';
    s += io::format_double(v);
    first = false;
  }
  return s + '\n';
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, const std::string& suite, const GlobalOptions& g, std::ostream& out) {
  SuiteResult r;
  try {
    if (suite == "w_monotone") r = suite_w_monotone(cfg, g);
    else if (suite == "estimates") r = suite_estimates(cfg);
    else if (suite == "theorem") r = suite_theorem(cfg, g);
    else if (suite == "contrast") r = suite_contrast(cfg, g);
    else throw ConfigError("unknown verify suite '" + suite + "'");
  } catch (const InapplicableError& e) {
    r.passed = false;
    r.status = "inapplicable";
    r.failures.push_back({{"warning", e.what()}});
  }
  const json doc = {{"suite", suite}, {"passed", r.passed}, {"status", r.status}, {"checks", r.checks},
                    {"failures", r.failures}};
  write_file(out_dir(cfg, g) / ("verify_" + suite + ".json"), doc.dump(2) + "\n");
  out << "verify " << suite << ": " << r.status << " (" << r.checks.size() << " checks, " << r.failures.size()
      << " failures)\n";
  if (r.status == "inapplicable") out << "warning: " << r.failures[0]["warning"].get<std::string>() << '\n';
  return r.passed ? kSuccess : kCheckFailed;
}

int cmd_sweep(const ExperimentConfig& cfg, const std::string& over, const GlobalOptions& g, std::ostream& out) {
  const json& sj = section(cfg.raw, "sweep");
  if (over != "lambda" && over != "epsilon" && over != "b0" && over != "alpha")
    throw ConfigError("unknown sweep axis '" + over + "'");
  const auto grid = grid_or(sj, over.c_str(), {});
  if (grid.empty()) throw ConfigError("sweep: missing or empty grid 'sweep." + over + "'");
  const Mollifier psi = mollifier_by_name(cfg.mollifier_name);
  const double t = get_or<double>(sj, "t", 0.5);
  std::vector<std::string> rows(grid.size());
  std::string header;

  if (over == "b0") {
    header = "b0,M1,M2,M3,delta_min\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto c = compute_constants(psi, grid[i]);
      rows[i] = csv_row({grid[i], c.M1, c.M2, c.M3, c.delta_min});
    }
  } else if (over == "epsilon") {
    const auto& a = need_coefficient(cfg);
    header = "eps,e1,e2,e3,e1_over_log_eps,e2_over_log_eps,e3_over_eps_log_eps\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double eps = grid[i];
      const auto e = measure_estimates(a, psi, eps, t);
      const double le = std::abs(std::log(eps));
      rows[i] = csv_row({eps, e.e1, e.e2, e.e3, e.e1 / le, e.e2 / le, e.e3 / (eps * le)});
    }
  } else if (over == "lambda") {
    const auto& a = need_coefficient(cfg);
    const auto consts = compute_constants(psi, a.b0());
    const double delta = chosen_delta(cfg, consts);
    header = "lambda,eps,e1,e2,e3,amplification,M4,bound,max_w_increment\n";
    parallel_for(grid.size(), g.threads, [&](std::size_t i) {
      const double lambda = grid[i];
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const auto traj = integrate_mode(lambda, a, random_mode_state(lambda, effective_seed(cfg, g) + i), cfg.T,
                                       cfg.integrator);
      const double amp = traj.peak_norm / traj.states.front().norm();
      if (lambda > 4.0) {
        const auto e = measure_estimates(a, psi, 1.0 / lambda, t);
        const double m4 = amplification_constant(a, psi, lambda, cfg.T);
        double inc = nan;
        try {
          inc = verify_w_monotone(traj, a, psi, delta);
        } catch (const InapplicableError&) {
        }
        rows[i] = csv_row({lambda, 1.0 / lambda, e.e1, e.e2, e.e3, amp, m4, m4 * std::pow(lambda, delta * cfg.T), inc});
      } else {
        rows[i] = csv_row({lambda, nan, nan, nan, nan, amp, nan, nan, nan});
      }
    });
  } else {
    HoelderCuspParams hp = std::get<HoelderCuspParams>(oscillatory_hoelder_preset().params());
    double T = 1.0;
    if (cfg.coefficient && cfg.coefficient->family() == Family::hoelder_cusp) {
      hp = std::get<HoelderCuspParams>(cfg.coefficient->params());
      T = cfg.coefficient->T();
    }
    const auto lambdas = grid_or(sj, "lambda_grid", contrast_lambda_grid());
    IntegratorConfig icfg = cfg.raw.contains("integrator") ? cfg.integrator : contrast_integrator();
    header = "alpha,fitted_slope,max_local_slope,last_local_slope,amplification_at_max_lambda\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto res = hoelder_contrast(grid[i], lambdas, hp, T, icfg, g.threads);
      std::vector<ModeAmplification> table;
      for (const auto& row : res) table.push_back({"", row.lambda, row.amplification});
      double fit = std::numeric_limits<double>::quiet_NaN();
      try {
        fit = fit_loss_exponent(table);
      } catch (const InsufficientDataError&) {
      }
      rows[i] = csv_row({grid[i], fit, max_local_slope(res), res.back().local_slope, res.back().amplification});
    }
  }

  std::string content = header;
  for (const auto& row : rows) content += row;
  const fs::path path = out_dir(cfg, g) / ("sweep_" + over + ".csv");
  write_file(path, content);
  out << "sweep " << over << ": " << rows.size() << " rows written to " << path.string() << '\n';
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral solver and verification suite for wave equations with Log-Lipschitz speeds",
               "loglip-wave"};
  app.require_subcommand(1);
  GlobalOptions g;
  std::optional<std::size_t> threads;
  std::optional<std::uint64_t> seed;
  std::string suite, over;
  auto add_globals = [&](CLI::App* cmd) {
    cmd->add_option("--config", g.config_path, "Experiment config (JSON)")->required();
    cmd->add_option("--out", g.out_dir, "Output directory");
    cmd->add_option("--threads", threads, "Worker threads (fallback: LOGLIP_WAVE_THREADS)");
    cmd->add_option("--seed", seed, "Seed for random initial data");
    cmd->add_flag("--dump-modes", g.dump_modes, "Write one trajectory CSV per mode");
  };
  auto* constants = app.add_subcommand("constants", "Print M1, M2, M3, delta_min and the chosen delta");
  add_globals(constants);
  constants->add_flag("--json", g.json_output, "Print JSON instead of plain text");
  auto* solve = app.add_subcommand("solve", "Solve the Cauchy problem and write the report");
  add_globals(solve);
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_globals(verify);
  verify->add_option("suite,--suite", suite, "w_monotone | estimates | theorem | contrast")->required();
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write a CSV");
  add_globals(sweep);
  sweep->add_option("over,--over", over, "lambda | epsilon | b0 | alpha")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (threads) {
    g.threads = *threads;
  } else if (const char* env = std::getenv("LOGLIP_WAVE_THREADS")) {
    try {
      g.threads = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      err << "error: LOGLIP_WAVE_THREADS must be a positive integer\n";
      return kConfigError;
    }
  } else {
    g.threads = std::max(1U, std::thread::hardware_concurrency());
  }
  if (g.threads == 0) g.threads = 1;
  g.seed = seed;

  try {
    const ExperimentConfig cfg = parse_config(io::read_json_file(g.config_path));
    if (constants->parsed()) return cmd_constants(cfg, g, out);
    if (solve->parsed()) return cmd_solve(cfg, g, out);
    if (verify->parsed()) return cmd_verify(cfg, suite, g, out);
    return cmd_sweep(cfg, over, g, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InapplicableError& e) {
    err << "inapplicable: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace loglip::cli
