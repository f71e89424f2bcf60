#include "loglip/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "loglip/errors.hpp"

namespace loglip {

std::string to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::torus: return "torus";
    case SpectrumKind::su2: return "su2";
    case SpectrumKind::graded_abstract: return "graded_abstract";
    case SpectrumKind::custom: return "custom";
  }
  return "unknown";
}

SpectrumKind spectrum_kind_from_string(const std::string& name) {
  for (auto k : {SpectrumKind::torus, SpectrumKind::su2, SpectrumKind::graded_abstract, SpectrumKind::custom})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown spectrum kind '" + name + "'");
}

Spectrum::Spectrum(std::vector<ModeDescriptor> modes, SpectrumKind kind, std::optional<double> homogeneity_nu)
    : modes_(std::move(modes)), kind_(kind), nu_(homogeneity_nu) {
  if (modes_.empty()) throw ConfigError("spectrum: no modes");
  if (nu_ && !(*nu_ > 0.0)) throw ConfigError("spectrum: homogeneity nu must be > 0");
  std::set<std::string> labels;
  for (const auto& m : modes_) {
    if (!(m.lambda >= 0.0) || !std::isfinite(m.lambda)) throw ConfigError("spectrum: lambda must be finite and >= 0");
    if (!(m.weight > 0.0) || !std::isfinite(m.weight)) throw ConfigError("spectrum: weight must be > 0");
    if (!labels.insert(m.label).second) throw ConfigError("spectrum: duplicate label '" + m.label + "'");
  }
  std::stable_sort(modes_.begin(), modes_.end(), [](const ModeDescriptor& a, const ModeDescriptor& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.label < b.label;
  });
}

Spectrum torus_spectrum(int dim, int K) {
  if (dim < 1 || dim > 3) throw ConfigError("torus_spectrum: dim must be 1, 2 or 3");
  if (K < 1) throw ConfigError("torus_spectrum: K must be >= 1");
  // group lattice points by the exact integer |k|^2
  std::map<long, long> counts;
  const int d2 = dim >= 2 ? K : 0;
  const int d3 = dim >= 3 ? K : 0;
  for (int i = -K; i <= K; ++i)
    for (int j = -d2; j <= d2; ++j)
      for (int k = -d3; k <= d3; ++k) ++counts[long{i} * i + long{j} * j + long{k} * k];
  std::vector<ModeDescriptor> modes;
  modes.reserve(counts.size());
  for (const auto& [n2, c] : counts)
    modes.push_back({"k2=" + std::to_string(n2), std::sqrt(static_cast<double>(n2)), static_cast<double>(c)});
  return Spectrum(std::move(modes), SpectrumKind::torus);
}

Spectrum su2_spectrum(int Lmax) {
  if (Lmax < 0) throw ConfigError("su2_spectrum: Lmax must be >= 0");
  std::vector<ModeDescriptor> modes;
  for (int l = 0; l <= Lmax; ++l) {
    const double d = 2.0 * l + 1.0;
    modes.push_back({"l=" + std::to_string(l), std::sqrt(static_cast<double>(l) * (l + 1)), d * d * d});
  }
  return Spectrum(std::move(modes), SpectrumKind::su2);
}

Spectrum abstract_spectrum(const std::vector<std::pair<double, double>>& entries, std::optional<double> nu,
                           std::vector<std::string> labels) {
  if (entries.empty()) throw ConfigError("abstract_spectrum: empty entry list");
  if (!labels.empty() && labels.size() != entries.size())
    throw ConfigError("abstract_spectrum: label count does not match entries");
  std::vector<ModeDescriptor> modes;
  modes.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    modes.push_back({labels.empty() ? "j" + std::to_string(i) : labels[i], entries[i].first, entries[i].second});
  return Spectrum(std::move(modes), nu ? SpectrumKind::graded_abstract : SpectrumKind::custom, nu);
}

Spectrum merge_spectra(const Spectrum& a, const Spectrum& b) {
  std::vector<ModeDescriptor> modes = a.modes();
  modes.insert(modes.end(), b.modes().begin(), b.modes().end());
  return Spectrum(std::move(modes), a.kind() == b.kind() ? a.kind() : SpectrumKind::custom,
                  a.homogeneity_nu() ? a.homogeneity_nu() : b.homogeneity_nu());
}

std::string to_string(SobolevConvention c) {
  switch (c) {
    case SobolevConvention::inhomogeneous: return "inhomogeneous";
    case SobolevConvention::homogeneous: return "homogeneous";
    case SobolevConvention::graded: return "graded";
  }
  return "unknown";
}

SobolevConvention convention_from_string(const std::string& name) {
  for (auto c : {SobolevConvention::inhomogeneous, SobolevConvention::homogeneous, SobolevConvention::graded})
    if (to_string(c) == name) return c;
  throw ConfigError("unknown Sobolev convention '" + name + "'");
}

double sobolev_weight(double lambda, double s, SobolevConvention conv, std::optional<double> nu) {
  switch (conv) {
    case SobolevConvention::inhomogeneous:
      return std::pow(1.0 + lambda * lambda, s);
    case SobolevConvention::homogeneous:
      if (lambda == 0.0) throw ZeroModeExcluded();
      return std::pow(lambda, 2.0 * s);
    case SobolevConvention::graded:
      if (!nu) throw ConfigError("graded convention requires the homogeneity degree nu");
      if (lambda == 0.0) throw ZeroModeExcluded();
      return std::pow(lambda, 4.0 * s / *nu);
  }
  return 0.0;
}

double sobolev_norm(const Eigen::Ref<const Eigen::VectorXcd>& coeffs, const Spectrum& spec, double s,
                    SobolevConvention conv) {
  if (static_cast<std::size_t>(coeffs.size()) != spec.size())
    throw ContractViolation("sobolev_norm: state length does not match spectrum");
  if (conv == SobolevConvention::graded && !spec.homogeneity_nu())
    throw ConfigError("graded convention requires a spectrum with homogeneity nu");
  double sum = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto& m = spec[j];
    if (m.lambda == 0.0 && conv != SobolevConvention::inhomogeneous) continue;
    sum += m.weight * sobolev_weight(m.lambda, s, conv, spec.homogeneity_nu()) *
           std::norm(coeffs[static_cast<Eigen::Index>(j)]);
  }
  return std::sqrt(sum);
}

double sobolev_norm(const SpectralState& state, const Spectrum& spec, double s, SobolevConvention conv,
                    NormTarget which) {
  if (state.u_hat.size() != state.ut_hat.size())
    throw ContractViolation("sobolev_norm: u_hat and ut_hat lengths differ");
  return sobolev_norm(which == NormTarget::position ? state.u_hat : state.ut_hat, spec, s, conv);
}

SpectralState random_state(const Spectrum& spec, double decay, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralState st(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double scale = std::pow(std::max(spec[j].lambda, 1.0), -decay);
    const double ur = gauss(rng), ui = gauss(rng), vr = gauss(rng), vi = gauss(rng);
    const auto idx = static_cast<Eigen::Index>(j);
    st.u_hat[idx] = scale * std::complex<double>(ur, ui);
    st.ut_hat[idx] = scale * std::complex<double>(vr, vi);
  }
  return st;
}

}  // namespace loglip
