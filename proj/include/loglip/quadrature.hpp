#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "loglip/errors.hpp"

namespace loglip {

/// Gauss-Legendre rule on [-1, 1], nodes from Newton iteration on P_n.
template <typename Scalar = double>
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t order) : nodes_(order), weights_(order) {
    if (order == 0) throw PreconditionError("Gauss-Legendre order must be positive");
    const std::size_t n = order;
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
      Scalar x = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
      Scalar dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Scalar p0 = 1, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const Scalar pk = ((2 * Scalar(k) - 1) * x * p1 - (Scalar(k) - 1) * p0) / Scalar(k);
          p0 = p1;
          p1 = pk;
        }
        if (n == 1) p0 = 1;
        dp = Scalar(n) * (x * p1 - p0) / (x * x - 1);
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < Scalar(1e-16)) break;
      }
      // recompute derivative at the converged node
      Scalar p0 = 1, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const Scalar pk = ((2 * Scalar(k) - 1) * x * p1 - (Scalar(k) - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1;
      dp = Scalar(n) * (x * p1 - p0) / (x * x - 1);
      const Scalar w = 2 / ((1 - x * x) * dp * dp);
      nodes_[i] = -x;
      nodes_[n - 1 - i] = x;
      weights_[i] = w;
      weights_[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes_[n / 2] = 0;
  }

  std::size_t order() const noexcept { return nodes_.size(); }
  const std::vector<Scalar>& nodes() const noexcept { return nodes_; }
  const std::vector<Scalar>& weights() const noexcept { return weights_; }

 private:
  std::vector<Scalar> nodes_;
  std::vector<Scalar> weights_;
};

/// Composite Gauss-Legendre on [lo, hi] with `panels` equal panels.
template <typename Scalar, typename F>
Scalar composite_gauss(const GaussLegendre<Scalar>& rule, F&& f, Scalar lo, Scalar hi, std::size_t panels) {
  const Scalar h = (hi - lo) / Scalar(panels);
  const auto& x = rule.nodes();
  const auto& w = rule.weights();
  Scalar total = 0;
  for (std::size_t p = 0; p < panels; ++p) {
    const Scalar mid = lo + (Scalar(p) + Scalar(0.5)) * h;
    Scalar acc = 0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += w[k] * f(mid + Scalar(0.5) * h * x[k]);
    total += Scalar(0.5) * h * acc;
  }
  return total;
}

/// Number of Gauss nodes per panel in every composite rule of this library.
inline constexpr std::size_t kPanelOrder = 8;

/// Shared 8-point rule.
inline const GaussLegendre<double>& panel_rule() {
  static const GaussLegendre<double> rule(kPanelOrder);
  return rule;
}

/// Composite rule with `nodes` total points (rounded up to a multiple of 8).
template <typename F>
double integrate_nodes(F&& f, double lo, double hi, std::size_t nodes) {
  const std::size_t panels = std::max<std::size_t>(1, (nodes + kPanelOrder - 1) / kPanelOrder);
  return composite_gauss(panel_rule(), std::forward<F>(f), lo, hi, panels);
}

}  // namespace loglip
