#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "loglip/coefficients.hpp"
#include "loglip/mode_solver.hpp"

namespace loglip {

/// H(t) = [[1, 1], [lambda1, lambda2]] built from the mollified root
/// lambda2 = sqrt(a) * psi_eps and lambda1 = -lambda2.
struct HFrame {
  double t = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double detH = 0.0;
  double dlambda2 = 0.0;

  Eigen::Matrix2d H() const;
  Eigen::Matrix2d H_inverse() const;
  /// d/dt H = [[0, 0], [-lambda2', lambda2']].
  Eigen::Matrix2d dH() const;
};

/// Exponent rho(t) = rho0 - delta t; eps is the mollification width.
struct TransformParams {
  double eps = 0.125;
  double rho0 = 0.0;
  double delta = 1.0;
  double lambda = 8.0;

  /// eps = 1/lambda.
  static TransformParams for_mode(double lambda, double delta, double rho0 = 0.0);
};

struct EnergyConstants {
  double M1 = 0.0;
  double M2 = 0.0;
  double M3 = 0.0;
  double delta_min = 0.0;
  std::optional<double> M4_bound;
};

/// M1 = M2 = int|s psi'| / b0, M3 = int s psi / (2 b0^2), delta_min = M1 + M2 + M3.
EnergyConstants compute_constants(const Mollifier& psi, double b0);

HFrame build_frame(const CoefficientSpec& a, const Mollifier& psi, double eps, double t);

/// W = lambda^{rho(t)} (lambda2 V1 - V2, -lambda1 V1 + V2) = detH lambda^{rho(t)} H^{-1} V.
ModeState to_W(const ModeState& V, const HFrame& frame, const TransformParams& p, double t);

/// Inverse of to_W: V = lambda^{-rho(t)} H W / detH.
ModeState from_W(const ModeState& W, const HFrame& frame, const TransformParams& p, double t);

struct EstimateTerms {
  double e1 = 0.0;  ///< |d/dt detH| / detH
  double e2 = 0.0;  ///< ||H^{-1} dH||
  double e3 = 0.0;  ///< ||H^{-1} A H - (H^{-1} A H)^*||
};

/// The three error terms of the W-energy identity, each evaluated from its
/// explicit matrix rather than from the simplified closed forms.
EstimateTerms measure_estimates(const CoefficientSpec& a, const Mollifier& psi, double eps, double t);

/// Bounds the estimate terms should satisfy, with the LL constant of sqrt(a)
/// measured on the coefficient rather than assumed.
struct EstimateBounds {
  double ll_sqrt_a = 0.0;
  double M1_measured = 0.0;  ///< bound on e1/|log eps| and e2/|log eps|
  double e3_bound = 0.0;     ///< bound on e3/(eps |log eps|)
};

EstimateBounds estimate_bounds(const CoefficientSpec& a, const Mollifier& psi, std::size_t grid_size = 2048);

struct WSample {
  double t = 0.0;
  double w_squared = 0.0;
};

/// |W(t)|^2 at every stored sample of the trajectory (p.eps must equal 1/lambda).
std::vector<WSample> w_energy_series(const ModeTrajectory& traj, const CoefficientSpec& a, const Mollifier& psi,
                                     const TransformParams& p);

/// Largest relative increment (|W_{k+1}|^2 - |W_k|^2) / |W_k|^2 over consecutive
/// samples. Throws InapplicableError when lambda <= 4 or delta <= delta_min.
double verify_w_monotone(const ModeTrajectory& traj, const CoefficientSpec& a, const Mollifier& psi, double delta);

inline constexpr std::size_t kAmplificationGrid = 1025;

/// M4(lambda) = max_t (detH(0)/detH(t)) ||H(t)|| ||H^{-1}(0)|| on a uniform t-grid.
double amplification_constant(const CoefficientSpec& a, const Mollifier& psi, double lambda, double T,
                              std::size_t grid_points = kAmplificationGrid);

struct AmplificationCheck {
  double observed = 0.0;
  double bound = 0.0;
};

/// observed = max_t |V(t)|/|V(0)|, bound = M4(lambda) lambda^{delta T}.
AmplificationCheck verify_amplification(const ModeTrajectory& traj, const CoefficientSpec& a, const Mollifier& psi,
                                        double delta, double T);

}  // namespace loglip
