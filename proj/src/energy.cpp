#include "loglip/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loglip/errors.hpp"
#include "loglip/linalg.hpp"

namespace loglip {

Eigen::Matrix2d HFrame::H() const {
  Eigen::Matrix2d h;
  h << 1.0, 1.0, lambda1, lambda2;
  return h;
}

Eigen::Matrix2d HFrame::H_inverse() const {
  Eigen::Matrix2d h;
  h << lambda2, -1.0, -lambda1, 1.0;
  return h / detH;
}

Eigen::Matrix2d HFrame::dH() const {
  Eigen::Matrix2d h;
  h << 0.0, 0.0, -dlambda2, dlambda2;
  return h;
}

TransformParams TransformParams::for_mode(double lambda, double delta, double rho0) {
  return TransformParams{1.0 / lambda, rho0, delta, lambda};
}

EnergyConstants compute_constants(const Mollifier& psi, double b0) {
  if (!(b0 > 0.0)) throw PreconditionError("compute_constants: b0 must be > 0");
  EnergyConstants c;
  c.M1 = psi.moment_abs_s_dpsi() / b0;
  c.M2 = c.M1;
  c.M3 = psi.moment_s_psi() / (2.0 * b0 * b0);
  c.delta_min = c.M1 + c.M2 + c.M3;
  return c;
}

HFrame build_frame(const CoefficientSpec& a, const Mollifier& psi, double eps, double t) {
  HFrame f;
  f.t = t;
  f.lambda2 = mollify_sqrt(a, psi, eps, t);
  f.lambda1 = -f.lambda2;
  f.detH = f.lambda2 - f.lambda1;
  f.dlambda2 = mollify_sqrt_derivative(a, psi, eps, t);
  return f;
}

namespace {
double rho_power(const TransformParams& p, double t) {
  if (!(p.lambda > 1.0)) throw PreconditionError("W transform requires lambda > 1");
  return std::pow(p.lambda, p.rho0 - p.delta * t);
}
}  // namespace

ModeState to_W(const ModeState& V, const HFrame& frame, const TransformParams& p, double t) {
  const double scale = rho_power(p, t);
  return scale * ModeState(frame.lambda2 * V[0] - V[1], -frame.lambda1 * V[0] + V[1]);
}

ModeState from_W(const ModeState& W, const HFrame& frame, const TransformParams& p, double t) {
  const double scale = 1.0 / (rho_power(p, t) * frame.detH);
  return scale * ModeState(W[0] + W[1], frame.lambda1 * W[0] + frame.lambda2 * W[1]);
}

EstimateTerms measure_estimates(const CoefficientSpec& a, const Mollifier& psi, double eps, double t) {
  const HFrame f = build_frame(a, psi, eps, t);
  const Eigen::Matrix2d Hinv = f.H_inverse();
  Eigen::Matrix2d A;
  A << 0.0, 1.0, a(t), 0.0;
  const Eigen::Matrix2d conj = Hinv * A * f.H();
  EstimateTerms e;
  e.e1 = std::abs((f.dlambda2 - (-f.dlambda2)) / f.detH);
  e.e2 = operator_norm(Hinv * f.dH());
  e.e3 = operator_norm(conj - conj.transpose());
  return e;
}

EstimateBounds estimate_bounds(const CoefficientSpec& a, const Mollifier& psi, std::size_t grid_size) {
  EstimateBounds b;
  b.ll_sqrt_a = sqrt_ll_seminorm_estimate(a, grid_size);
  b.M1_measured = b.ll_sqrt_a * psi.moment_abs_s_dpsi() / a.b0();
  b.e3_bound = b.ll_sqrt_a * psi.moment_s_psi() * 2.0 * std::sqrt(a.a_sup()) / a.b0();
  return b;
}

std::vector<WSample> w_energy_series(const ModeTrajectory& traj, const CoefficientSpec& a, const Mollifier& psi,
                                     const TransformParams& p) {
  if (std::abs(p.eps * traj.lambda - 1.0) > 1e-12 || std::abs(p.lambda - traj.lambda) > 1e-12 * traj.lambda)
    throw PreconditionError("w_energy_series: eps must equal 1/lambda of the trajectory");
  std::vector<WSample> out;
  out.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const HFrame f = build_frame(a, psi, p.eps, t);
    out.push_back({t, to_W(traj.states[k], f, p, t).squaredNorm()});
  }
  return out;
}

namespace {
void require_applicable(double lambda, const CoefficientSpec& a, const Mollifier& psi, double delta) {
  if (!(lambda > 4.0)) throw InapplicableError("W-monotonicity applies only for lambda > 4");
  const double dmin = compute_constants(psi, a.b0()).delta_min;
  if (!(delta > dmin))
    throw InapplicableError("W-monotonicity requires delta > delta_min = " + std::to_string(dmin));
}
}  // namespace

double verify_w_monotone(const ModeTrajectory& traj, const CoefficientSpec& a, const Mollifier& psi, double delta) {
  require_applicable(traj.lambda, a, psi, delta);
  const auto series = w_energy_series(traj, a, psi, TransformParams::for_mode(traj.lambda, delta));
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const double w0 = series[k].w_squared;
    if (w0 == 0.0) {
      worst = std::max(worst, series[k + 1].w_squared == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      continue;
    }
    worst = std::max(worst, (series[k + 1].w_squared - w0) / w0);
  }
  return worst;
}

double amplification_constant(const CoefficientSpec& a, const Mollifier& psi, double lambda, double T,
                              std::size_t grid_points) {
  if (!(lambda > 4.0)) throw PreconditionError("amplification_constant requires lambda > 4");
  if (grid_points < 2) throw PreconditionError("amplification_constant: grid too small");
  const double eps = 1.0 / lambda;
  const HFrame f0 = build_frame(a, psi, eps, 0.0);
  const double inv0 = operator_norm(f0.H_inverse());
  double best = 0.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    const HFrame f = build_frame(a, psi, eps, t);
    best = std::max(best, f0.detH / f.detH * operator_norm(f.H()) * inv0);
  }
  return best;
}

AmplificationCheck verify_amplification(const ModeTrajectory& traj, const CoefficientSpec& a, const Mollifier& psi,
                                        double delta, double T) {
  require_applicable(traj.lambda, a, psi, delta);
  const double v0 = traj.states.front().norm();
  if (v0 == 0.0) throw UndefinedRatioError("verify_amplification: |V(0)| = 0");
  AmplificationCheck c;
  c.observed = traj.peak_norm / v0;
  c.bound = amplification_constant(a, psi, traj.lambda, T) * std::pow(traj.lambda, delta * T);
  return c;
}

}  // namespace loglip
