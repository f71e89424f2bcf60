#include "loglip/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "loglip/errors.hpp"
#include "loglip/quadrature.hpp"

namespace loglip {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e

double loglip_profile(double r) {
  if (r <= 0.0) return 0.0;
  if (r <= kInvE) return r * (1.0 - std::log(r));
  return r + kInvE;
}

double interp_uniform(const std::vector<double>& v, double T, double t) {
  const double x = t / T * static_cast<double>(v.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(x), v.size() - 2);
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * v[i] + w * v[i + 1];
}

double interp_knots(const PiecewiseLinearParams& p, double t) {
  if (t <= p.t.front()) return p.a.front();
  if (t >= p.t.back()) return p.a.back();
  const auto it = std::upper_bound(p.t.begin(), p.t.end(), t);
  const auto i = static_cast<std::size_t>(it - p.t.begin()) - 1;
  const double w = (t - p.t[i]) / (p.t[i + 1] - p.t[i]);
  return (1.0 - w) * p.a[i] + w * p.a[i + 1];
}

void validate_params(const FamilyParams& params) {
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ConstantParams>) {
          if (!(p.a > 0.0)) throw ConfigError("constant: a must be > 0");
        } else if constexpr (std::is_same_v<P, PiecewiseLinearParams>) {
          if (p.t.size() < 2 || p.t.size() != p.a.size())
            throw ConfigError("piecewise_linear: need >= 2 knots with matching t and a");
          for (std::size_t i = 1; i < p.t.size(); ++i)
            if (!(p.t[i] > p.t[i - 1])) throw ConfigError("piecewise_linear: knots must be strictly ascending");
        } else if constexpr (std::is_same_v<P, LogLipCuspParams>) {
          if (!(p.a_c > 0.0) || !(p.kappa >= 0.0)) throw ConfigError("loglip_cusp: need a_c > 0, kappa >= 0");
        } else if constexpr (std::is_same_v<P, HoelderCuspParams>) {
          if (!(p.a_c > 0.0) || !(p.kappa >= 0.0)) throw ConfigError("hoelder_cusp: need a_c > 0, kappa >= 0");
          if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw ConfigError("hoelder_cusp: alpha must lie in (0, 1]");
          if (!(p.beta >= 0.0)) throw ConfigError("hoelder_cusp: beta must be >= 0");
        } else {
          if (p.values.size() < 2) throw ConfigError("custom_sampled: need >= 2 samples");
        }
      },
      params);
}

double radical_inverse2(std::size_t k) {
  double result = 0.0;
  double f = 0.5;
  while (k > 0) {
    if (k & 1U) result += f;
    k >>= 1U;
    f *= 0.5;
  }
  return result;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::constant: return "constant";
    case Family::piecewise_linear: return "piecewise_linear";
    case Family::loglip_cusp: return "loglip_cusp";
    case Family::hoelder_cusp: return "hoelder_cusp";
    case Family::custom_sampled: return "custom_sampled";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (auto f : {Family::constant, Family::piecewise_linear, Family::loglip_cusp, Family::hoelder_cusp,
                 Family::custom_sampled})
    if (to_string(f) == name) return f;
  throw ConfigError("unknown coefficient family '" + name + "'");
}

CoefficientSpec::CoefficientSpec(FamilyParams params, double T, double a_inf, double b0, double a_sup)
    : params_(std::move(params)), T_(T), a_inf_(a_inf), b0_(b0), a_sup_(a_sup) {
  if (!(T_ > 0.0) || !std::isfinite(T_)) throw ConfigError("coefficient: T must be finite and > 0");
  if (!(a_inf_ > 0.0)) throw ConfigError("coefficient: a_inf must be > 0");
  if (!(b0_ > 0.0)) throw ConfigError("coefficient: b0 must be > 0");
  if (!(a_sup_ >= a_inf_)) throw ConfigError("coefficient: a_sup must be >= a_inf");
  constexpr double slack = 4.0 * std::numeric_limits<double>::epsilon();
  if (b0_ * b0_ > a_inf_ * (1.0 + slack)) throw ConfigError("coefficient: b0^2 must be <= a_inf");
  validate_params(params_);

  constexpr std::size_t kCheckPoints = 4097;
  for (std::size_t k = 0; k < kCheckPoints; ++k) {
    const double t = T_ * static_cast<double>(k) / static_cast<double>(kCheckPoints - 1);
    const double a = eval_inside(t);
    if (!std::isfinite(a) || a < a_inf_)
      throw ConfigError("coefficient: a(" + std::to_string(t) + ") = " + std::to_string(a) + " is below a_inf");
    if (a > a_sup_ * (1.0 + 1e-12))
      throw ConfigError("coefficient: a(" + std::to_string(t) + ") = " + std::to_string(a) + " exceeds a_sup");
    if (b0_ > std::sqrt(a) * (1.0 + slack)) throw ConfigError("coefficient: b0 exceeds sqrt(a) on the grid");
  }
}

Family CoefficientSpec::family() const noexcept { return static_cast<Family>(params_.index()); }

double CoefficientSpec::operator()(double t) const { return eval_inside(std::clamp(t, 0.0, T_)); }

double CoefficientSpec::eval_inside(double t) const {
  return std::visit(
      [&](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ConstantParams>) {
          return p.a;
        } else if constexpr (std::is_same_v<P, PiecewiseLinearParams>) {
          return interp_knots(p, t);
        } else if constexpr (std::is_same_v<P, LogLipCuspParams>) {
          return p.a_c + p.kappa * loglip_profile(std::abs(t - p.t0));
        } else if constexpr (std::is_same_v<P, HoelderCuspParams>) {
          const double r = std::abs(t - p.t0);
          if (r == 0.0) return p.a_c;
          double bump = std::pow(r, p.alpha);
          if (p.beta > 0.0) {
            const double s = std::sin(std::pow(r, -p.beta));
            bump *= s * s;
          }
          return p.a_c + p.kappa * bump;
        } else {
          return interp_uniform(p.values, T_, t);
        }
      },
      params_);
}

CoefficientSpec make_constant(double a, double T) {
  if (!(a > 0.0)) throw ConfigError("constant: a must be > 0");
  return CoefficientSpec(ConstantParams{a}, T, a, std::sqrt(a), a);
}

CoefficientSpec make_piecewise_linear(std::vector<double> t, std::vector<double> a, double T) {
  PiecewiseLinearParams p{std::move(t), std::move(a)};
  validate_params(p);
  // extrema of a piecewise linear function sit at knots or at the domain ends
  std::vector<double> vals{interp_knots(p, 0.0), interp_knots(p, T)};
  for (std::size_t i = 0; i < p.t.size(); ++i)
    if (p.t[i] > 0.0 && p.t[i] < T) vals.push_back(p.a[i]);
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  const double a_inf = *lo, a_sup = *hi;
  if (!(a_inf > 0.0)) throw ConfigError("piecewise_linear: values must stay > 0 on [0, T]");
  return CoefficientSpec(std::move(p), T, a_inf, std::sqrt(a_inf), a_sup);
}

CoefficientSpec make_loglip_cusp(double a_c, double kappa, double t0, double T) {
  LogLipCuspParams p{a_c, kappa, t0};
  validate_params(p);
  const double r_max = std::max(std::abs(t0), std::abs(T - t0));
  const double r_min = std::clamp(t0, 0.0, T) == t0 ? 0.0 : std::min(std::abs(t0), std::abs(T - t0));
  const double a_inf = a_c + kappa * loglip_profile(r_min);
  return CoefficientSpec(p, T, a_inf, std::sqrt(a_inf), a_c + kappa * loglip_profile(r_max));
}

CoefficientSpec make_hoelder_cusp(double a_c, double kappa, double alpha, double t0, double T, double beta) {
  HoelderCuspParams p{a_c, kappa, alpha, beta, t0};
  validate_params(p);
  const double r_max = std::max(std::abs(t0), std::abs(T - t0));
  // the oscillatory variant touches a_c whenever sin vanishes; keep a_c as the certified infimum
  const bool inside = t0 >= 0.0 && t0 <= T;
  const double r_min = inside ? 0.0 : std::min(std::abs(t0), std::abs(T - t0));
  const double a_inf = beta > 0.0 ? a_c : a_c + kappa * std::pow(r_min, alpha);
  return CoefficientSpec(p, T, a_inf, std::sqrt(a_inf), a_c + kappa * std::pow(r_max, alpha));
}

CoefficientSpec loglip_preset() { return make_loglip_cusp(1.0, 1.0, 0.5, 1.0); }

CoefficientSpec oscillatory_hoelder_preset() { return make_hoelder_cusp(1.0, 4.0, 0.1, -0.2, 1.0, 3.0); }

std::vector<double> nested_sample_points(double T, std::size_t n) {
  std::vector<double> pts;
  pts.reserve(n);
  if (n >= 1) pts.push_back(0.0);
  if (n >= 2) pts.push_back(T);
  for (std::size_t k = 1; pts.size() < n; ++k) pts.push_back(T * radical_inverse2(k));
  return pts;
}

double ll_seminorm_estimate(const std::function<double(double)>& f, double T, std::size_t grid_size) {
  if (grid_size < 2) throw PreconditionError("ll_seminorm_estimate: grid_size must be >= 2");
  const auto pts = nested_sample_points(T, grid_size);
  std::vector<double> vals(pts.size());
  std::transform(pts.begin(), pts.end(), vals.begin(), f);
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double r = std::abs(pts[i] - pts[j]);
      const double q = std::abs(vals[i] - vals[j]) / (r * (1.0 + std::abs(std::log(r))));
      best = std::max(best, q);
    }
  }
  return best;
}

double ll_seminorm_estimate(const CoefficientSpec& spec, std::size_t grid_size) {
  return ll_seminorm_estimate([&](double t) { return spec(t); }, spec.T(), grid_size);
}

double sqrt_ll_seminorm_estimate(const CoefficientSpec& spec, std::size_t grid_size) {
  return ll_seminorm_estimate([&](double t) { return std::sqrt(spec(t)); }, spec.T(), grid_size);
}

// --- mollifiers ---

Mollifier::Mollifier(std::string name, Fn value, Fn derivative)
    : name_(std::move(name)), value_(std::move(value)), dvalue_(std::move(derivative)) {
  if (!value_) throw ConfigError("mollifier: missing evaluator");
  const auto m = mollifier_moments(*this, kDefaultConvolutionNodes);
  m0_ = m.psi;
  m1_ = m.s_psi;
  m_abs_ = m.abs_s_dpsi;
  if (std::abs(m0_ - 1.0) > 1e-10) throw ConfigError("mollifier '" + name_ + "': mass is not 1");
  for (int k = 0; k <= 64; ++k) {
    const double s = 1.0 + k / 64.0;
    if ((*this)(s) < 0.0) throw ConfigError("mollifier '" + name_ + "': negative value");
  }
}

double Mollifier::operator()(double s) const { return (s <= 1.0 || s >= 2.0) ? 0.0 : value_(s); }

double Mollifier::derivative(double s) const {
  if (s <= 1.0 || s >= 2.0) return 0.0;
  if (dvalue_) return dvalue_(s);
  constexpr double h = 1e-6;
  return ((*this)(s + h) - (*this)(s - h)) / (2.0 * h);
}

Mollifier poly_bump() {
  return Mollifier(
      "poly_bump", [](double s) { return 30.0 * (s - 1.0) * (s - 1.0) * (2.0 - s) * (2.0 - s); },
      [](double s) { return 60.0 * (s - 1.0) * (2.0 - s) * (3.0 - 2.0 * s); });
}

Mollifier exp_bump() {
  const auto raw = [](double s) {
    const double q = (s - 1.0) * (2.0 - s);
    return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
  };
  const double mass = integrate_nodes(raw, 1.0, 2.0, 4096);
  const double c = 1.0 / mass;
  return Mollifier(
      "exp_bump", [=](double s) { return c * raw(s); },
      [=](double s) {
        const double q = (s - 1.0) * (2.0 - s);
        if (q <= 0.0) return 0.0;
        const double dq = 3.0 - 2.0 * s;
        return c * raw(s) * dq / (q * q);
      });
}

Mollifier mollifier_by_name(const std::string& name) {
  if (name == "poly_bump") return poly_bump();
  if (name == "exp_bump") return exp_bump();
  throw ConfigError("unknown mollifier '" + name + "'");
}

MollifierMoments mollifier_moments(const Mollifier& psi, std::size_t quad_points) {
  if (quad_points < 64) throw PreconditionError("mollifier_moments: quad_points must be >= 64");
  const auto eval = [&](std::size_t n) {
    return MollifierMoments{
        integrate_nodes([&](double s) { return psi(s); }, 1.0, 2.0, n),
        integrate_nodes([&](double s) { return s * psi(s); }, 1.0, 2.0, n),
        integrate_nodes([&](double s) { return std::abs(s * psi.derivative(s)); }, 1.0, 2.0, n)};
  };
  constexpr std::size_t kMaxPoints = std::size_t{1} << 20;
  auto prev = eval(quad_points);
  for (std::size_t n = 2 * quad_points; n <= kMaxPoints; n *= 2) {
    const auto next = eval(n);
    const double diff = std::max({std::abs(next.psi - prev.psi), std::abs(next.s_psi - prev.s_psi),
                                  std::abs(next.abs_s_dpsi - prev.abs_s_dpsi)});
    if (diff <= 1e-9) return next;
    prev = next;
  }
  throw NumericalError("mollifier_moments: quadrature did not converge for '" + psi.name() + "'");
}

namespace {
void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.25)) throw PreconditionError("mollification width must satisfy 0 < eps < 1/4");
}
}  // namespace

double mollify_sqrt(const CoefficientSpec& spec, const Mollifier& psi, double eps, double t, std::size_t nodes) {
  check_eps(eps);
  return integrate_nodes([&](double s) { return std::sqrt(spec(t - eps * s)) * psi(s); }, 1.0, 2.0, nodes);
}

double mollify_sqrt_derivative(const CoefficientSpec& spec, const Mollifier& psi, double eps, double t,
                               std::size_t nodes) {
  check_eps(eps);
  // int psi' = 0, so subtracting sqrt(a(t)) only removes cancellation error
  const double centre = std::sqrt(spec(t));
  const double integral = integrate_nodes(
      [&](double s) { return (std::sqrt(spec(t - eps * s)) - centre) * psi.derivative(s); }, 1.0, 2.0, nodes);
  return integral / eps;
}

}  // namespace loglip
