#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace loglip {

template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Spectral norm of a 2x2 matrix (real or complex) in closed form:
/// sigma_max^2 = (F^2 + sqrt(F^4 - 4|det|^2)) / 2 with F the Frobenius norm.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  static_assert(Derived::RowsAtCompileTime == 2 && Derived::ColsAtCompileTime == 2, "2x2 only");
  const Real f2 = m.squaredNorm();
  const Real det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const Real disc = std::max(Real(0), f2 * f2 - 4 * det * det);
  return std::sqrt((f2 + std::sqrt(disc)) / 2);
}

/// Smallest singular value of a 2x2 matrix, same closed form.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real min_singular_value(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const Real det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const Real sigma_max = operator_norm(m);
  return sigma_max > 0 ? det / sigma_max : Real(0);
}

}  // namespace loglip
