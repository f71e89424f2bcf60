#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "loglip/coefficients.hpp"
#include "loglip/energy.hpp"
#include "loglip/mode_solver.hpp"
#include "loglip/spectrum.hpp"

namespace loglip {

enum class Setting { compact, graded, hilbert };

std::string to_string(Setting s);
Setting setting_from_string(const std::string& name);

struct CauchyProblem {
  Spectrum spectrum;
  CoefficientSpec coefficient;
  SpectralState initial;
  double s = 0.0;
  double T = 1.0;
  SobolevConvention convention = SobolevConvention::inhomogeneous;
  Setting setting = Setting::compact;
};

struct ModeAmplification {
  std::string label;
  double lambda = 0.0;
  double amplification = 0.0;
};

struct SolutionReport {
  std::vector<double> times;
  std::vector<double> norm_u;   ///< at index s - loss
  std::vector<double> norm_ut;  ///< at index s - loss - order
  std::vector<double> C_t;
  double rhs_u0 = 0.0;  ///< ||u0|| at s
  double rhs_u1 = 0.0;  ///< ||u1|| at s - order
  std::vector<ModeAmplification> per_mode_amplification;
  double empirical_C = 0.0;
  std::optional<double> fitted_exponent;
  EnergyConstants constants;
  double delta = 0.0;
  double position_index = 0.0;
  double velocity_index = 0.0;
  /// One per positive-frequency mode when requested, in spectrum order.
  std::vector<ModeTrajectory> trajectories;
  std::vector<std::string> trajectory_labels;
};

struct SolveOptions {
  std::size_t threads = 1;
  bool keep_trajectories = false;
  /// poly_bump when empty.
  std::optional<Mollifier> mollifier;
};

/// Loss of derivatives and velocity order for a setting:
/// compact/hilbert (delta T/2, 1), graded (nu delta T/4, nu/2).
struct LossIndices {
  double loss = 0.0;
  double velocity_order = 1.0;
};
LossIndices loss_indices(Setting setting, double delta, double T, std::optional<double> nu);

/// Divides each mode of u0 by the square root of its weight at s, and of u1 at
/// s - order, so that Gaussian data of decay p lands in the data space with
/// norm sum lambda^{-2p}. Modes without a weight (lambda = 0, homogeneous) are kept.
SpectralState sobolev_normalized(const SpectralState& state, const Spectrum& spec, double s, SobolevConvention conv,
                                 Setting setting);

SolutionReport solve_cauchy(const CauchyProblem& p, const IntegratorConfig& cfg, double delta,
                            const SolveOptions& opts = {});

struct TheoremCheck {
  bool passed = false;
  double C_base = 0.0;
  double C_refined = 0.0;
  double relative_change = 0.0;
};

/// Finiteness of empirical C, and relative change across a truncation
/// doubling at most tol.
TheoremCheck verify_theorem(const SolutionReport& base, const SolutionReport& refined, double tol = 0.10);
/// Finiteness only (no refinement available).
bool verify_theorem(const SolutionReport& report);

/// Least-squares slope of log(amplification) against log(lambda) over modes
/// with lambda > 4. Throws InsufficientDataError below four usable modes.
double fit_loss_exponent(const SolutionReport& report);
double fit_loss_exponent(const std::vector<ModeAmplification>& table);

struct ContrastRow {
  double lambda = 0.0;
  double amplification = 0.0;
  /// d log(amp) / d log(lambda) against the previous row; NaN on the first.
  double local_slope = 0.0;
};

/// Propagator amplification for each lambda in an ascending grid.
std::vector<ContrastRow> amplification_curve(const CoefficientSpec& a, const std::vector<double>& lambda_grid,
                                             const IntegratorConfig& cfg, std::size_t threads = 1);

/// Contrast run for a(t) = a_c + kappa r^alpha [sin^2(r^-beta)] with alpha from the argument.
std::vector<ContrastRow> hoelder_contrast(double alpha, const std::vector<double>& lambda_grid,
                                          const HoelderCuspParams& a_params, double T, const IntegratorConfig& cfg,
                                          std::size_t threads = 1);

/// Local slopes among the upper half of the grid points are nondecreasing.
bool upper_half_slopes_nondecreasing(const std::vector<ContrastRow>& rows);
double max_local_slope(const std::vector<ContrastRow>& rows);

/// Integrator settings and lambda grid of the shipped contrast experiment.
IntegratorConfig contrast_integrator();
std::vector<double> contrast_lambda_grid();

}  // namespace loglip
