#include "loglip/mode_solver.hpp"

#include <algorithm>
#include <cmath>

#include "loglip/errors.hpp"

namespace loglip {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

/// One RK4 step of X' = i lambda A(t) X, for a single state or a 2x2 fundamental matrix.
template <typename State>
State rk4_step(const CoefficientSpec& a, double lambda, double t, double dt, const State& X) {
  const auto apply = [&](double tau, const State& Y) -> State {
    State out;
    out.row(0) = (kI * lambda) * Y.row(1);
    out.row(1) = (kI * lambda * a(tau)) * Y.row(0);
    return out;
  };
  const double th = t + 0.5 * dt;
  const State k1 = apply(t, X);
  const State k2 = apply(th, X + (0.5 * dt) * k1);
  const State k3 = apply(th, X + (0.5 * dt) * k2);
  const State k4 = apply(t + dt, X + dt * k3);
  return X + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void require_positive(double lambda, double T) {
  if (!(lambda > 0.0)) throw PreconditionError("mode integration requires lambda > 0");
  if (!(T > 0.0)) throw PreconditionError("mode integration requires T > 0");
}

}  // namespace

ModeState system_rhs(double t, const ModeState& V, double lambda, const CoefficientSpec& a) {
  return ModeState(kI * lambda * V[1], kI * lambda * a(t) * V[0]);
}

std::size_t rk4_step_count(double lambda, const CoefficientSpec& a, double T, const IntegratorConfig& cfg) {
  if (!(cfg.dt_max > 0.0) || !(cfg.cfl_c > 0.0)) throw ConfigError("integrator: dt_max and cfl_c must be > 0");
  const double dt = std::min(cfg.dt_max, cfg.cfl_c / (lambda * std::sqrt(a.a_sup())));
  return static_cast<std::size_t>(std::ceil(T / dt * (1.0 - 1e-12)));
}

ModeTrajectory integrate_mode_steps(double lambda, const CoefficientSpec& a, const ModeState& V0, double T,
                                    std::size_t steps, std::size_t store_every) {
  require_positive(lambda, T);
  if (steps == 0) throw PreconditionError("integrate_mode: at least one step required");
  if (store_every == 0) throw ConfigError("integrator: store_every must be >= 1");
  const double dt = T / static_cast<double>(steps);
  ModeTrajectory traj;
  traj.lambda = lambda;
  traj.dt_used = dt;
  traj.times.reserve(steps / store_every + 2);
  traj.states.reserve(steps / store_every + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(V0);
  traj.peak_norm = V0.norm();
  ModeState V = V0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    V = rk4_step(a, lambda, t, dt, V);
    if (!V.allFinite()) throw InstabilityError("integrate_mode: non-finite state", static_cast<long>(k + 1));
    traj.peak_norm = std::max(traj.peak_norm, V.norm());
    const std::size_t done = k + 1;
    if (done == steps) {
      traj.times.push_back(T);
      traj.states.push_back(V);
    } else if (done % store_every == 0) {
      traj.times.push_back(static_cast<double>(done) * dt);
      traj.states.push_back(V);
    }
  }
  return traj;
}

ModeTrajectory integrate_mode(double lambda, const CoefficientSpec& a, const ModeState& V0, double T,
                              const IntegratorConfig& cfg) {
  require_positive(lambda, T);
  return integrate_mode_steps(lambda, a, V0, T, rk4_step_count(lambda, a, T, cfg), cfg.store_every);
}

std::pair<std::complex<double>, std::complex<double>> exact_constant_mode(double a, double lambda,
                                                                          std::complex<double> v0,
                                                                          std::complex<double> v1, double t) {
  if (!(a > 0.0) || !(lambda > 0.0)) throw PreconditionError("exact_constant_mode: need a > 0, lambda > 0");
  const double w = std::sqrt(a) * lambda;
  const double c = std::cos(w * t), s = std::sin(w * t);
  return {c * v0 + (s / w) * v1, -w * s * v0 + c * v1};
}

std::pair<std::complex<double>, std::complex<double>> zero_mode(std::complex<double> v0, std::complex<double> v1,
                                                                double t) {
  return {v0 + t * v1, v1};
}

ModeTrajectory reference_oracle(double lambda, const CoefficientSpec& a, const ModeState& V0, double T,
                                const IntegratorConfig& cfg) {
  require_positive(lambda, T);
  const std::size_t n = rk4_step_count(lambda, a, T, cfg);
  auto fine = integrate_mode_steps(lambda, a, V0, T, 16 * n, 16 * cfg.store_every);
  const auto finer = integrate_mode_steps(lambda, a, V0, T, 32 * n, 32 * n);
  fine.states.back() = (16.0 * finer.states.back() - fine.states.back()) / 15.0;
  return fine;
}

double constant_energy(const ModeState& V, double a, double /*lambda*/) {
  if (!(a > 0.0)) throw PreconditionError("constant_energy: a must be > 0");
  return a * std::norm(V[0]) + std::norm(V[1]);
}

double propagator_amplification(double lambda, const CoefficientSpec& a, double T, const IntegratorConfig& cfg) {
  require_positive(lambda, T);
  const std::size_t steps = rk4_step_count(lambda, a, T, cfg);
  const double dt = T / static_cast<double>(steps);
  Propagator P = Propagator::Identity();
  double peak = 1.0;
  for (std::size_t k = 0; k < steps; ++k) {
    P = rk4_step(a, lambda, static_cast<double>(k) * dt, dt, P);
    if (!P.allFinite()) throw InstabilityError("propagator_amplification: non-finite state", static_cast<long>(k + 1));
    peak = std::max(peak, operator_norm(P));
  }
  return peak;
}

}  // namespace loglip
