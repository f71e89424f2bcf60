#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loglip {

/// One frequency of the diagonalized operator with its aggregated
/// multiplicity / Plancherel weight.
struct ModeDescriptor {
  std::string label;
  double lambda = 0.0;
  double weight = 1.0;
};

enum class SpectrumKind { torus, su2, graded_abstract, custom };

std::string to_string(SpectrumKind k);
SpectrumKind spectrum_kind_from_string(const std::string& name);

/// Finite truncation of the dual, sorted by (lambda, label).
class Spectrum {
 public:
  Spectrum(std::vector<ModeDescriptor> modes, SpectrumKind kind, std::optional<double> homogeneity_nu = {});

  const std::vector<ModeDescriptor>& modes() const noexcept { return modes_; }
  std::size_t size() const noexcept { return modes_.size(); }
  const ModeDescriptor& operator[](std::size_t i) const { return modes_[i]; }
  SpectrumKind kind() const noexcept { return kind_; }
  std::optional<double> homogeneity_nu() const noexcept { return nu_; }

 private:
  std::vector<ModeDescriptor> modes_;
  SpectrumKind kind_;
  std::optional<double> nu_;
};

/// Distinct |k| over k in Z^dim with |k|_inf <= K; weight = lattice count.
Spectrum torus_spectrum(int dim, int K);

/// lambda_l = sqrt(l(l+1)), weight (2l+1)^3, l = 0..Lmax.
Spectrum su2_spectrum(int Lmax);

/// Passthrough of (lambda, weight) entries; kind graded_abstract when nu is
/// given, custom otherwise. Labels default to "j<index>".
Spectrum abstract_spectrum(const std::vector<std::pair<double, double>>& entries, std::optional<double> nu = {},
                           std::vector<std::string> labels = {});

/// Union of two spectra with disjoint labels.
Spectrum merge_spectra(const Spectrum& a, const Spectrum& b);

enum class SobolevConvention { inhomogeneous, homogeneous, graded };

std::string to_string(SobolevConvention c);
SobolevConvention convention_from_string(const std::string& name);

/// (1+lambda^2)^s, lambda^{2s}, or lambda^{4s/nu}. Throws ZeroModeExcluded for
/// lambda = 0 under the homogeneous and graded conventions.
double sobolev_weight(double lambda, double s, SobolevConvention conv, std::optional<double> nu = {});

/// Per-mode Fourier coefficients (u_hat, ut_hat) aligned with Spectrum::modes.
struct SpectralState {
  Eigen::VectorXcd u_hat;
  Eigen::VectorXcd ut_hat;

  SpectralState() = default;
  explicit SpectralState(std::size_t n) : u_hat(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n))),
                                          ut_hat(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n))) {}
  SpectralState(Eigen::VectorXcd u, Eigen::VectorXcd ut) : u_hat(std::move(u)), ut_hat(std::move(ut)) {}

  std::size_t size() const noexcept { return static_cast<std::size_t>(u_hat.size()); }
};

enum class NormTarget { position, velocity };

/// sqrt(sum_j weight_j w(lambda_j) |c_j|^2) in the fixed mode order, zero
/// modes skipped under homogeneous/graded conventions.
double sobolev_norm(const SpectralState& state, const Spectrum& spec, double s, SobolevConvention conv,
                    NormTarget which);

/// Same reduction over an explicit coefficient vector.
double sobolev_norm(const Eigen::Ref<const Eigen::VectorXcd>& coeffs, const Spectrum& spec, double s,
                    SobolevConvention conv);

/// Per-mode complex Gaussians scaled by max(lambda, 1)^{-decay}. Draws are
/// taken in mode order (re u, im u, re ut, im ut), so a spectrum that extends
/// another by higher modes shares its leading data.
SpectralState random_state(const Spectrum& spec, double decay, unsigned long long seed);

}  // namespace loglip
