#include "loglip/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loglip/errors.hpp"
#include "loglip/parallel.hpp"

namespace loglip {

std::string to_string(Setting s) {
  switch (s) {
    case Setting::compact: return "compact";
    case Setting::graded: return "graded";
    case Setting::hilbert: return "hilbert";
  }
  return "unknown";
}

Setting setting_from_string(const std::string& name) {
  for (auto s : {Setting::compact, Setting::graded, Setting::hilbert})
    if (to_string(s) == name) return s;
  throw ConfigError("unknown setting '" + name + "'");
}

LossIndices loss_indices(Setting setting, double delta, double T, std::optional<double> nu) {
  if (setting == Setting::graded) {
    if (!nu) throw ConfigError("graded setting requires the homogeneity degree nu");
    return {*nu * delta * T / 4.0, *nu / 2.0};
  }
  return {delta * T / 2.0, 1.0};
}

SpectralState sobolev_normalized(const SpectralState& state, const Spectrum& spec, double s, SobolevConvention conv,
                                 Setting setting) {
  if (static_cast<std::size_t>(state.u_hat.size()) != spec.size() ||
      static_cast<std::size_t>(state.ut_hat.size()) != spec.size())
    throw ContractViolation("sobolev_normalized: state not aligned with spectrum");
  const double order = loss_indices(setting, 0.0, 0.0, spec.homogeneity_nu()).velocity_order;
  SpectralState out = state;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double lambda = spec[j].lambda;
    if (lambda == 0.0 && conv != SobolevConvention::inhomogeneous) continue;
    const auto k = static_cast<Eigen::Index>(j);
    out.u_hat[k] /= std::sqrt(sobolev_weight(lambda, s, conv, spec.homogeneity_nu()));
    out.ut_hat[k] /= std::sqrt(sobolev_weight(lambda, s - order, conv, spec.homogeneity_nu()));
  }
  return out;
}

namespace {

void validate(const CauchyProblem& p, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("solve_cauchy: delta must be > 0");
  if (!(p.T > 0.0)) throw ConfigError("solve_cauchy: T must be > 0");
  if (p.initial.size() != p.spectrum.size() || p.initial.ut_hat.size() != p.initial.u_hat.size())
    throw ContractViolation("solve_cauchy: initial data not aligned with spectrum");
  if (!p.initial.u_hat.allFinite() || !p.initial.ut_hat.allFinite())
    throw ConfigError("solve_cauchy: initial data must be finite");
  const bool graded_conv = p.convention == SobolevConvention::graded;
  if (p.setting == Setting::graded) {
    if (!p.spectrum.homogeneity_nu()) throw ConfigError("graded setting requires a spectrum with nu");
    if (!graded_conv) throw ConfigError("graded setting requires the graded Sobolev convention");
  } else if (graded_conv) {
    throw ConfigError("graded convention is only available in the graded setting");
  }
}

/// weight_j * w(lambda_j, index); zero where the convention excludes the mode.
std::vector<double> norm_weights(const Spectrum& spec, double index, SobolevConvention conv) {
  std::vector<double> w(spec.size(), 0.0);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto& m = spec[j];
    if (m.lambda == 0.0 && conv != SobolevConvention::inhomogeneous) continue;
    w[j] = m.weight * sobolev_weight(m.lambda, index, conv, spec.homogeneity_nu());
  }
  return w;
}

struct ModeSeries {
  std::vector<std::complex<double>> u;
  std::vector<std::complex<double>> ut;
  std::optional<double> amplification;
  std::optional<ModeTrajectory> trajectory;
};

}  // namespace

SolutionReport solve_cauchy(const CauchyProblem& p, const IntegratorConfig& cfg, double delta,
                            const SolveOptions& opts) {
  validate(p, delta);
  const std::size_t R = cfg.report_intervals;
  if (R == 0) throw ConfigError("integrator: report_intervals must be >= 1");
  const auto& spec = p.spectrum;
  const std::size_t n_modes = spec.size();

  std::vector<double> times(R + 1);
  for (std::size_t k = 0; k <= R; ++k) times[k] = p.T * static_cast<double>(k) / static_cast<double>(R);
  times.back() = p.T;

  std::vector<ModeSeries> series(n_modes);
  parallel_for(n_modes, opts.threads, [&](std::size_t j) {
    const double lambda = spec[j].lambda;
    const auto idx = static_cast<Eigen::Index>(j);
    const std::complex<double> v0 = p.initial.u_hat[idx], v1 = p.initial.ut_hat[idx];
    ModeSeries& out = series[j];
    out.u.resize(R + 1);
    out.ut.resize(R + 1);
    if (lambda == 0.0) {
      for (std::size_t k = 0; k <= R; ++k) std::tie(out.u[k], out.ut[k]) = zero_mode(v0, v1, times[k]);
      return;
    }
    const std::size_t base = rk4_step_count(lambda, p.coefficient, p.T, cfg);
    const std::size_t per_interval = (base + R - 1) / R;
    const ModeState V0 = mode_state_from_data(lambda, v0, v1);
    ModeTrajectory traj = integrate_mode_steps(lambda, p.coefficient, V0, p.T, per_interval * R, per_interval);
    const std::complex<double> i_lambda(0.0, lambda);
    for (std::size_t k = 0; k <= R; ++k) {
      out.u[k] = traj.states[k][0] / i_lambda;
      out.ut[k] = traj.states[k][1];
    }
    const double n0 = V0.norm();
    if (n0 > 0.0) out.amplification = traj.peak_norm / n0;
    if (opts.keep_trajectories) out.trajectory = std::move(traj);
  });

  const auto [loss, order] = loss_indices(p.setting, delta, p.T, spec.homogeneity_nu());
  SolutionReport rep;
  rep.delta = delta;
  rep.position_index = p.s - loss;
  rep.velocity_index = p.s - loss - order;
  rep.constants = compute_constants(opts.mollifier ? *opts.mollifier : poly_bump(), p.coefficient.b0());
  rep.rhs_u0 = sobolev_norm(p.initial.u_hat, spec, p.s, p.convention);
  rep.rhs_u1 = sobolev_norm(p.initial.ut_hat, spec, p.s - order, p.convention);
  const double rhs2 = rep.rhs_u0 * rep.rhs_u0 + rep.rhs_u1 * rep.rhs_u1;

  const auto wu = norm_weights(spec, rep.position_index, p.convention);
  const auto wut = norm_weights(spec, rep.velocity_index, p.convention);
  rep.times = times;
  rep.norm_u.resize(R + 1);
  rep.norm_ut.resize(R + 1);
  rep.C_t.resize(R + 1);
  for (std::size_t k = 0; k <= R; ++k) {
    double su = 0.0, sut = 0.0;
    for (std::size_t j = 0; j < n_modes; ++j) {
      su += wu[j] * std::norm(series[j].u[k]);
      sut += wut[j] * std::norm(series[j].ut[k]);
    }
    rep.norm_u[k] = std::sqrt(su);
    rep.norm_ut[k] = std::sqrt(sut);
    const double lhs = su + sut;
    if (rhs2 == 0.0) {
      if (lhs != 0.0) throw DegenerateDataError("solve_cauchy: zero data norms with nonzero solution norms");
      rep.C_t[k] = 0.0;
    } else {
      rep.C_t[k] = lhs / rhs2;
    }
    if (!std::isfinite(rep.norm_u[k]) || !std::isfinite(rep.norm_ut[k]))
      throw NumericalError("solve_cauchy: non-finite norm at t = " + std::to_string(times[k]));
  }
  rep.empirical_C = *std::max_element(rep.C_t.begin(), rep.C_t.end());

  for (std::size_t j = 0; j < n_modes; ++j) {
    if (series[j].amplification) rep.per_mode_amplification.push_back({spec[j].label, spec[j].lambda,
                                                                       *series[j].amplification});
    if (series[j].trajectory) {
      rep.trajectories.push_back(std::move(*series[j].trajectory));
      rep.trajectory_labels.push_back(spec[j].label);
    }
  }
  try {
    rep.fitted_exponent = fit_loss_exponent(rep.per_mode_amplification);
  } catch (const InsufficientDataError&) {
    rep.fitted_exponent.reset();
  }
  return rep;
}

TheoremCheck verify_theorem(const SolutionReport& base, const SolutionReport& refined, double tol) {
  TheoremCheck c;
  c.C_base = base.empirical_C;
  c.C_refined = refined.empirical_C;
  const bool finite = std::isfinite(c.C_base) && std::isfinite(c.C_refined) && c.C_base > 0.0;
  c.relative_change = finite ? std::abs(c.C_refined - c.C_base) / c.C_base : std::numeric_limits<double>::infinity();
  c.passed = finite && c.relative_change <= tol;
  return c;
}

bool verify_theorem(const SolutionReport& report) { return std::isfinite(report.empirical_C); }

double fit_loss_exponent(const std::vector<ModeAmplification>& table) {
  std::vector<double> x, y;
  for (const auto& m : table) {
    if (m.lambda > 4.0 && m.amplification > 0.0 && std::isfinite(m.amplification)) {
      x.push_back(std::log(m.lambda));
      y.push_back(std::log(m.amplification));
    }
  }
  if (x.size() < 4) throw InsufficientDataError("fit_loss_exponent: need at least 4 modes with lambda > 4");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InsufficientDataError("fit_loss_exponent: all usable modes share one frequency");
  return sxy / sxx;
}

double fit_loss_exponent(const SolutionReport& report) { return fit_loss_exponent(report.per_mode_amplification); }

std::vector<ContrastRow> amplification_curve(const CoefficientSpec& a, const std::vector<double>& lambda_grid,
                                             const IntegratorConfig& cfg, std::size_t threads) {
  if (lambda_grid.empty()) throw ConfigError("amplification_curve: empty lambda grid");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1])) throw PreconditionError("lambda grid must be strictly ascending");
  std::vector<ContrastRow> rows(lambda_grid.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    rows[i].lambda = lambda_grid[i];
    rows[i].amplification = propagator_amplification(lambda_grid[i], a, a.T(), cfg);
  });
  rows[0].local_slope = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < rows.size(); ++i)
    rows[i].local_slope = std::log(rows[i].amplification / rows[i - 1].amplification) /
                          std::log(rows[i].lambda / rows[i - 1].lambda);
  return rows;
}

std::vector<ContrastRow> hoelder_contrast(double alpha, const std::vector<double>& lambda_grid,
                                          const HoelderCuspParams& a_params, double T, const IntegratorConfig& cfg,
                                          std::size_t threads) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("hoelder_contrast: alpha must lie in (0, 1)");
  const auto a = make_hoelder_cusp(a_params.a_c, a_params.kappa, alpha, a_params.t0, T, a_params.beta);
  return amplification_curve(a, lambda_grid, cfg, threads);
}

bool upper_half_slopes_nondecreasing(const std::vector<ContrastRow>& rows) {
  const std::size_t first = rows.size() / 2;
  // slopes between consecutive points of the upper half start at row first + 1
  for (std::size_t i = first + 2; i < rows.size(); ++i)
    if (rows[i].local_slope < rows[i - 1].local_slope) return false;
  return rows.size() >= 4;
}

double max_local_slope(const std::vector<ContrastRow>& rows) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) best = std::max(best, rows[i].local_slope);
  return best;
}

IntegratorConfig contrast_integrator() {
  IntegratorConfig cfg;
  cfg.dt_max = 1e-5;
  return cfg;
}

std::vector<double> contrast_lambda_grid() {
  std::vector<double> grid;
  for (int k = 3; k <= 10; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

}  // namespace loglip
