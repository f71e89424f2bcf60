#include "doctest.h"

#include <cmath>

#include "loglip/errors.hpp"
#include "loglip/spectrum.hpp"

using namespace loglip;

TEST_CASE("one-dimensional torus groups +k and -k") {
  const auto sp = torus_spectrum(1, 3);
  REQUIRE(sp.size() == 4);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(sp[n].lambda == doctest::Approx(static_cast<double>(n)));
    CHECK(sp[n].weight == (n == 0 ? 1.0 : 2.0));
  }
  CHECK(sp[2].label == "k2=4");
  CHECK(sp.kind() == SpectrumKind::torus);
}

TEST_CASE("two-dimensional torus lattice counts") {
  const auto sp = torus_spectrum(2, 1);
  REQUIRE(sp.size() == 3);
  CHECK(sp[0].weight == 1.0);
  CHECK(sp[1].weight == 4.0);
  CHECK(sp[2].weight == 4.0);
  CHECK(sp[2].lambda == doctest::Approx(std::sqrt(2.0)));
  double total = 0.0;
  for (const auto& m : torus_spectrum(2, 3).modes()) total += m.weight;
  CHECK(total == 49.0);
}

TEST_CASE("SU(2) spectrum") {
  const auto sp = su2_spectrum(3);
  REQUIRE(sp.size() == 4);
  for (int l = 0; l <= 3; ++l) {
    CHECK(sp[l].lambda == doctest::Approx(std::sqrt(l * (l + 1.0))));
    CHECK(sp[l].weight == std::pow(2.0 * l + 1.0, 3));
  }
}

TEST_CASE("spectrum validation") {
  CHECK_THROWS(Spectrum({}, SpectrumKind::custom));
  CHECK_THROWS(Spectrum({{"a", -1.0, 1.0}}, SpectrumKind::custom));
  CHECK_THROWS(Spectrum({{"a", 1.0, 0.0}}, SpectrumKind::custom));
  CHECK_THROWS(Spectrum({{"a", 1.0, 1.0}, {"a", 2.0, 1.0}}, SpectrumKind::custom));
  CHECK_THROWS(abstract_spectrum({{1.0, 1.0}}, 0.0));
  const Spectrum sp({{"b", 2.0, 1.0}, {"a", 2.0, 1.0}, {"c", 1.0, 1.0}}, SpectrumKind::custom);
  CHECK(sp[0].label == "c");
  CHECK(sp[1].label == "a");
  CHECK(sp[2].label == "b");
}

TEST_CASE("abstract spectrum and merge") {
  const auto g = abstract_spectrum({{1.0, 1.0}, {2.0, 3.0}}, 3.0);
  CHECK(g.kind() == SpectrumKind::graded_abstract);
  CHECK(g.homogeneity_nu().value() == 3.0);
  CHECK(g[1].label == "j1");
  const auto c = abstract_spectrum({{1.5, 1.0}}, std::nullopt, {"x"});
  CHECK(c.kind() == SpectrumKind::custom);
  const auto m = merge_spectra(g, c);
  REQUIRE(m.size() == 3);
  CHECK(m[1].label == "x");
  CHECK_THROWS(merge_spectra(g, g));
}

TEST_CASE("sobolev weights") {
  CHECK(sobolev_weight(2.0, 1.5, SobolevConvention::inhomogeneous) == doctest::Approx(std::pow(5.0, 1.5)));
  CHECK(sobolev_weight(2.0, 1.5, SobolevConvention::homogeneous) == doctest::Approx(8.0));
  CHECK(sobolev_weight(2.0, 1.5, SobolevConvention::graded, 3.0) == doctest::Approx(4.0));
  CHECK(sobolev_weight(0.0, 1.0, SobolevConvention::inhomogeneous) == 1.0);
  CHECK_THROWS_AS(sobolev_weight(0.0, 1.0, SobolevConvention::homogeneous), ZeroModeExcluded);
  CHECK_THROWS_AS(sobolev_weight(0.0, 1.0, SobolevConvention::graded, 2.0), ZeroModeExcluded);
  CHECK_THROWS_AS(sobolev_weight(1.0, 1.0, SobolevConvention::graded), ConfigError);
  // graded at nu = 2 is the homogeneous weight
  for (double lam : {0.5, 1.0, 7.0}) {
    CHECK(sobolev_weight(lam, 1.3, SobolevConvention::graded, 2.0) ==
          doctest::Approx(sobolev_weight(lam, 1.3, SobolevConvention::homogeneous)).epsilon(1e-14));
  }
}

TEST_CASE("sobolev norm by hand") {
  const auto sp = torus_spectrum(1, 2);
  SpectralState st(3);
  st.u_hat << 1.0, std::complex<double>(0.0, 2.0), 3.0;
  st.ut_hat << 0.0, 1.0, 0.0;
  const double s = 1.0;
  const double by_hand = std::sqrt(1.0 * 1.0 + 2.0 * 2.0 * 4.0 + 2.0 * 5.0 * 9.0);
  CHECK(sobolev_norm(st, sp, s, SobolevConvention::inhomogeneous, NormTarget::position) == doctest::Approx(by_hand));
  const double homog = std::sqrt(2.0 * 1.0 * 4.0 + 2.0 * 4.0 * 9.0);
  CHECK(sobolev_norm(st, sp, s, SobolevConvention::homogeneous, NormTarget::position) == doctest::Approx(homog));
  CHECK(sobolev_norm(st.ut_hat, sp, 0.0, SobolevConvention::inhomogeneous) == doctest::Approx(std::sqrt(2.0)));
  CHECK(sobolev_norm(st, sp, 0.0, SobolevConvention::inhomogeneous, NormTarget::velocity) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("random data is seeded, decaying and prefix-stable") {
  const auto small = torus_spectrum(1, 8);
  const auto big = torus_spectrum(1, 16);
  const auto a = random_state(small, 2.0, 7);
  const auto b = random_state(big, 2.0, 7);
  const auto c = random_state(small, 2.0, 8);
  CHECK(a.u_hat == random_state(small, 2.0, 7).u_hat);
  CHECK(a.u_hat == b.u_hat.head(a.size()));
  CHECK(a.ut_hat == b.ut_hat.head(a.size()));
  CHECK(a.u_hat != c.u_hat);
  double hi = 0.0;
  for (Eigen::Index k = 12; k < b.u_hat.size(); ++k) hi = std::max(hi, std::abs(b.u_hat[k]));
  CHECK(hi < 8.0 / 144.0);
}
