#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "loglip/coefficients.hpp"
#include "loglip/linalg.hpp"

namespace loglip {

/// V = (i lambda v_hat, d/dt v_hat).
using ModeState = Vector2c<double>;
using Propagator = Matrix2c<double>;

enum class Method { rk4 };

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt_max = 1e-3;
  double cfl_c = 0.1;
  std::size_t store_every = 1;
  /// Report grid used by solve_cauchy: every mode's step count is a multiple of this.
  std::size_t report_intervals = 200;
};

struct ModeTrajectory {
  std::vector<double> times;
  std::vector<ModeState> states;
  double lambda = 0.0;
  double dt_used = 0.0;
  /// max over every RK4 step of |V(t)|, including unstored ones.
  double peak_norm = 0.0;
};

/// i lambda A(t) V with A = [[0, 1], [a(t), 0]].
ModeState system_rhs(double t, const ModeState& V, double lambda, const CoefficientSpec& a);

/// dt = min(dt_max, cfl_c / (lambda sqrt(a_sup))), shrunk so an integer number of steps lands on T.
std::size_t rk4_step_count(double lambda, const CoefficientSpec& a, double T, const IntegratorConfig& cfg);

/// Classical RK4 with the step rule above.
ModeTrajectory integrate_mode(double lambda, const CoefficientSpec& a, const ModeState& V0, double T,
                              const IntegratorConfig& cfg);

/// Same scheme with an explicit step count; samples every `store_every` steps plus both endpoints.
ModeTrajectory integrate_mode_steps(double lambda, const CoefficientSpec& a, const ModeState& V0, double T,
                                    std::size_t steps, std::size_t store_every);

/// Closed form for frozen coefficient a: returns (v_hat(t), d/dt v_hat(t)).
std::pair<std::complex<double>, std::complex<double>> exact_constant_mode(double a, double lambda,
                                                                          std::complex<double> v0,
                                                                          std::complex<double> v1, double t);

/// lambda = 0: (v0 + t v1, v1).
std::pair<std::complex<double>, std::complex<double>> zero_mode(std::complex<double> v0, std::complex<double> v1,
                                                                double t);

/// Trajectory at dt/16 whose endpoint is replaced by the Richardson combination
/// (16 V(dt/32) - V(dt/16)) / 15, dt being the step integrate_mode would use.
ModeTrajectory reference_oracle(double lambda, const CoefficientSpec& a, const ModeState& V0, double T,
                                const IntegratorConfig& cfg);

/// a |V1|^2 + |V2|^2.
double constant_energy(const ModeState& V, double a, double lambda);

/// max over steps of the operator norm of the 2x2 fundamental matrix.
double propagator_amplification(double lambda, const CoefficientSpec& a, double T, const IntegratorConfig& cfg);

/// V in terms of (v_hat, d/dt v_hat).
inline ModeState mode_state_from_data(double lambda, std::complex<double> v0, std::complex<double> v1) {
  return ModeState(std::complex<double>(0.0, lambda) * v0, v1);
}

}  // namespace loglip
