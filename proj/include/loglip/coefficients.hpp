#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace loglip {

// Coefficient families. Every family is evaluated on [0, T] and extended by
// its endpoint values outside, so convolution windows reaching t < 0 are defined.

struct ConstantParams {
  double a = 1.0;
};

/// Linear interpolation between knots (t_k, a_k); knots ascending.
struct PiecewiseLinearParams {
  std::vector<double> t;
  std::vector<double> a;
};

/// a(t) = a_c + kappa * r (1 - log r), r = |t - t0| <= 1/e, continued C^1 by
/// a_c + kappa (r + 1/e) beyond.
struct LogLipCuspParams {
  double a_c = 1.0;
  double kappa = 1.0;
  double t0 = 0.0;
};

/// a(t) = a_c + kappa r^alpha, or with beta > 0 the oscillatory variant
/// a_c + kappa r^alpha sin^2(r^-beta).
struct HoelderCuspParams {
  double a_c = 1.0;
  double kappa = 1.0;
  double alpha = 0.5;
  double beta = 0.0;
  double t0 = 0.0;
};

/// Samples on a uniform grid over [0, T], linearly interpolated.
struct CustomSampledParams {
  std::vector<double> values;
};

enum class Family { constant, piecewise_linear, loglip_cusp, hoelder_cusp, custom_sampled };

using FamilyParams =
    std::variant<ConstantParams, PiecewiseLinearParams, LogLipCuspParams, HoelderCuspParams, CustomSampledParams>;

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// A propagation speed a(t) on [0, T] with certified bounds:
/// a_inf <= a(t) <= a_sup and b0 <= sqrt(a(t)), b0^2 <= a_inf.
/// Construction validates the bounds on a dense sample grid.
class CoefficientSpec {
 public:
  CoefficientSpec(FamilyParams params, double T, double a_inf, double b0, double a_sup);

  Family family() const noexcept;
  const FamilyParams& params() const noexcept { return params_; }
  double T() const noexcept { return T_; }
  double a_inf() const noexcept { return a_inf_; }
  double b0() const noexcept { return b0_; }
  double a_sup() const noexcept { return a_sup_; }

  /// a(t), clamped to the endpoint values outside [0, T].
  double operator()(double t) const;

 private:
  double eval_inside(double t) const;

  FamilyParams params_;
  double T_;
  double a_inf_;
  double b0_;
  double a_sup_;
};

inline double eval_coefficient(const CoefficientSpec& spec, double t) { return spec(t); }

// Factories with closed-form certified bounds.
CoefficientSpec make_constant(double a, double T = 1.0);
CoefficientSpec make_piecewise_linear(std::vector<double> t, std::vector<double> a, double T);
CoefficientSpec make_loglip_cusp(double a_c, double kappa, double t0, double T = 1.0);
CoefficientSpec make_hoelder_cusp(double a_c, double kappa, double alpha, double t0, double T = 1.0,
                                  double beta = 0.0);

/// The Log-Lipschitz preset used by the verification suites:
/// a(t) = 1 + |t - 1/2| (1 - log|t - 1/2|) near t = 1/2, T = 1.
CoefficientSpec loglip_preset();

/// Oscillatory Hoelder preset used by the contrast experiment:
/// a(t) = 1 + 4 |t + 0.2|^0.1 sin^2(|t + 0.2|^-3), T = 1.
CoefficientSpec oscillatory_hoelder_preset();

/// Sample points used by the seminorm estimate: {0, T} followed by the
/// base-2 van der Corput sequence scaled to [0, T]. Sets are nested in n.
std::vector<double> nested_sample_points(double T, std::size_t n);

/// max over sample pairs of |f(t) - f(s)| / (|t - s| (1 + |log|t - s||)).
double ll_seminorm_estimate(const std::function<double(double)>& f, double T, std::size_t grid_size);
double ll_seminorm_estimate(const CoefficientSpec& spec, std::size_t grid_size);
/// Same estimate for sqrt(a).
double sqrt_ll_seminorm_estimate(const CoefficientSpec& spec, std::size_t grid_size);

/// Nonnegative bump supported in [1, 2] with unit mass.
class Mollifier {
 public:
  using Fn = std::function<double(double)>;

  /// derivative may be empty; psi' then falls back to central differences.
  Mollifier(std::string name, Fn value, Fn derivative = {});

  const std::string& name() const noexcept { return name_; }
  double operator()(double s) const;
  double derivative(double s) const;
  bool has_analytic_derivative() const noexcept { return static_cast<bool>(dvalue_); }

  double moment_psi() const noexcept { return m0_; }
  double moment_s_psi() const noexcept { return m1_; }
  double moment_abs_s_dpsi() const noexcept { return m_abs_; }

 private:
  std::string name_;
  Fn value_;
  Fn dvalue_;
  double m0_ = 0.0;
  double m1_ = 0.0;
  double m_abs_ = 0.0;
};

/// psi(s) = 30 (s-1)^2 (2-s)^2.
Mollifier poly_bump();
/// psi(s) = C exp(-1 / ((s-1)(2-s))), C from quadrature.
Mollifier exp_bump();
Mollifier mollifier_by_name(const std::string& name);

struct MollifierMoments {
  double psi;
  double s_psi;
  double abs_s_dpsi;
};

/// (int psi, int s psi, int |s psi'|) over [1, 2] by composite Gauss-Legendre,
/// doubling from quad_points until successive values agree to 1e-9.
MollifierMoments mollifier_moments(const Mollifier& psi, std::size_t quad_points);

inline constexpr std::size_t kDefaultConvolutionNodes = 256;

/// lambda_2(t) = int_1^2 sqrt(a(t - eps s)) psi(s) ds, 0 < eps < 1/4.
double mollify_sqrt(const CoefficientSpec& spec, const Mollifier& psi, double eps, double t,
                    std::size_t nodes = kDefaultConvolutionNodes);

/// lambda_2'(t) = eps^-1 int_1^2 sqrt(a(t - eps s)) psi'(s) ds.
double mollify_sqrt_derivative(const CoefficientSpec& spec, const Mollifier& psi, double eps, double t,
                               std::size_t nodes = kDefaultConvolutionNodes);

}  // namespace loglip
