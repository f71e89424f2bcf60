#include "doctest.h"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "loglip/cauchy.hpp"
#include "loglip/errors.hpp"

using namespace loglip;
using cd = std::complex<double>;

namespace {

CauchyProblem single_mode(double lambda, double a, cd u0, cd u1, double s = 0.0) {
  Spectrum sp({{"m", lambda, 1.0}}, SpectrumKind::custom);
  SpectralState st(1);
  st.u_hat[0] = u0;
  st.ut_hat[0] = u1;
  return CauchyProblem{std::move(sp), make_constant(a), std::move(st), s, 1.0, SobolevConvention::inhomogeneous,
                       Setting::compact};
}

IntegratorConfig fine() {
  IntegratorConfig cfg;
  cfg.dt_max = 1e-4;
  cfg.report_intervals = 50;
  return cfg;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("loss indices per setting") {
  const auto c = loss_indices(Setting::compact, 12.0, 0.5, std::nullopt);
  CHECK(c.loss == 3.0);
  CHECK(c.velocity_order == 1.0);
  const auto g = loss_indices(Setting::graded, 12.0, 0.5, 3.0);
  CHECK(g.loss == doctest::Approx(4.5));
  CHECK(g.velocity_order == 1.5);
  CHECK_THROWS_AS(loss_indices(Setting::graded, 1.0, 1.0, std::nullopt), ConfigError);
  CHECK(setting_from_string("hilbert") == Setting::hilbert);
  CHECK_THROWS_AS(setting_from_string("torus"), ConfigError);
}

TEST_CASE("isometric rotation for a = 1") {
  const auto p = single_mode(1.0, 1.0, 1.0, 0.0);
  const auto rep = solve_cauchy(p, fine(), 12.6);
  CHECK(rep.empirical_C <= 1.0 + 1e-8);
  const double w = std::pow(2.0, rep.position_index / 2.0);
  for (std::size_t k = 0; k < rep.times.size(); ++k)
    CHECK(rep.norm_u[k] == doctest::Approx(std::abs(std::cos(rep.times[k])) * w).epsilon(1e-9));
  CHECK(rep.rhs_u0 == doctest::Approx(1.0));
  CHECK(rep.times.size() == 51);
}

TEST_CASE("initial ratio respects norm monotonicity") {
  const auto sp = torus_spectrum(1, 16);
  CauchyProblem p{sp, loglip_preset(), random_state(sp, 2.0, 5), 2.0, 1.0, SobolevConvention::inhomogeneous,
                  Setting::compact};
  const auto rep = solve_cauchy(p, fine(), 12.6);
  CHECK(rep.norm_u[0] <= rep.rhs_u0);
  CHECK(rep.C_t[0] <= 1.0);
  CHECK(std::isfinite(rep.empirical_C));
  CHECK(rep.fitted_exponent.has_value());
}

TEST_CASE("graded with nu = 2 equals compact") {
  const auto sp = abstract_spectrum({{1.0, 1.0}, {3.0, 2.0}, {8.0, 1.0}, {20.0, 3.0}}, 2.0);
  const auto data = random_state(sp, 1.0, 11);
  const CauchyProblem g{sp, loglip_preset(), data, 1.5, 1.0, SobolevConvention::graded, Setting::graded};
  const CauchyProblem c{sp, loglip_preset(), data, 1.5, 1.0, SobolevConvention::homogeneous, Setting::compact};
  const auto rg = solve_cauchy(g, fine(), 12.6);
  const auto rc = solve_cauchy(c, fine(), 12.6);
  CHECK(rg.position_index == rc.position_index);
  CHECK(rg.velocity_index == rc.velocity_index);
  for (std::size_t k = 0; k < rg.times.size(); ++k) {
    CHECK(rel(rg.norm_u[k], rc.norm_u[k]) <= 1e-12);
    CHECK(rel(rg.norm_ut[k], rc.norm_ut[k]) <= 1e-12);
  }
  CHECK(rel(rg.empirical_C, rc.empirical_C) <= 1e-12);
}

TEST_CASE("graded nu = 3 indices and weights by hand") {
  const auto sp = abstract_spectrum({{2.0, 1.0}, {5.0, 2.0}, {9.0, 1.0}}, 3.0);
  SpectralState st(3);
  st.u_hat << 1.0, cd(0.0, 0.5), 0.25;
  st.ut_hat << 0.5, 1.0, cd(0.1, 0.1);
  const double s = 4.0, delta = 2.0, T = 0.5;
  const CauchyProblem p{sp, make_constant(1.0), st, s, T, SobolevConvention::graded, Setting::graded};
  const auto rep = solve_cauchy(p, fine(), delta);
  const double pos = s - 3.0 * delta * T / 4.0;
  const double vel = pos - 1.5;
  CHECK(rep.position_index == doctest::Approx(pos));
  CHECK(rep.velocity_index == doctest::Approx(vel));
  const double lam[] = {2.0, 5.0, 9.0}, wt[] = {1.0, 2.0, 1.0};
  double nu = 0.0, nut = 0.0, r0 = 0.0, r1 = 0.0;
  for (int j = 0; j < 3; ++j) {
    nu += wt[j] * std::pow(lam[j], 4.0 * pos / 3.0) * std::norm(st.u_hat[j]);
    nut += wt[j] * std::pow(lam[j], 4.0 * vel / 3.0) * std::norm(st.ut_hat[j]);
    r0 += wt[j] * std::pow(lam[j], 4.0 * s / 3.0) * std::norm(st.u_hat[j]);
    r1 += wt[j] * std::pow(lam[j], 4.0 * (s - 1.5) / 3.0) * std::norm(st.ut_hat[j]);
  }
  CHECK(rep.norm_u[0] == doctest::Approx(std::sqrt(nu)).epsilon(1e-13));
  CHECK(rep.norm_ut[0] == doctest::Approx(std::sqrt(nut)).epsilon(1e-13));
  CHECK(rep.rhs_u0 == doctest::Approx(std::sqrt(r0)).epsilon(1e-13));
  CHECK(rep.rhs_u1 == doctest::Approx(std::sqrt(r1)).epsilon(1e-13));
}

TEST_CASE("setting and convention must agree") {
  const auto sp = abstract_spectrum({{2.0, 1.0}}, 3.0);
  const SpectralState st(1);
  CHECK_THROWS_AS(solve_cauchy({sp, make_constant(1.0), st, 0.0, 1.0, SobolevConvention::inhomogeneous, Setting::graded},
                               fine(), 1.0),
                  ConfigError);
  CHECK_THROWS_AS(solve_cauchy({torus_spectrum(1, 2), make_constant(1.0), SpectralState(3), 0.0, 1.0,
                                SobolevConvention::graded, Setting::compact},
                               fine(), 1.0),
                  ConfigError);
  CHECK_THROWS_AS(solve_cauchy({torus_spectrum(1, 2), make_constant(1.0), SpectralState(2), 0.0, 1.0,
                                SobolevConvention::inhomogeneous, Setting::compact},
                               fine(), 1.0),
                  ContractViolation);
  CHECK_THROWS_AS(solve_cauchy(single_mode(1.0, 1.0, 1.0, 0.0), fine(), 0.0), PreconditionError);
}

TEST_CASE("linearity") {
  const auto sp = torus_spectrum(1, 12);
  const auto data = random_state(sp, 2.0, 21);
  const cd c(-2.5, 1.0);
  const SpectralState scaled(c * data.u_hat, c * data.ut_hat);
  const CauchyProblem p{sp, loglip_preset(), data, 1.0, 1.0, SobolevConvention::inhomogeneous, Setting::compact};
  const CauchyProblem q{sp, loglip_preset(), scaled, 1.0, 1.0, SobolevConvention::inhomogeneous, Setting::compact};
  const auto rp = solve_cauchy(p, fine(), 12.6);
  const auto rq = solve_cauchy(q, fine(), 12.6);
  const double m = std::abs(c);
  for (std::size_t k = 0; k < rp.times.size(); ++k) {
    CHECK(rel(rq.norm_u[k], m * rp.norm_u[k]) <= 1e-10);
    CHECK(rel(rq.norm_ut[k], m * rp.norm_ut[k]) <= 1e-10);
  }
  CHECK(rel(rq.rhs_u0, m * rp.rhs_u0) <= 1e-10);
  CHECK(rel(rq.empirical_C, rp.empirical_C) <= 1e-10);
  CHECK(rel(*rq.fitted_exponent, *rp.fitted_exponent) <= 1e-10);
}

TEST_CASE("mode decoupling is exact") {
  const auto lo = abstract_spectrum({{3.0, 1.0}, {7.0, 2.0}}, std::nullopt, {"a", "b"});
  const auto hi = abstract_spectrum({{5.0, 1.0}, {11.0, 1.0}}, std::nullopt, {"c", "d"});
  const auto all = merge_spectra(lo, hi);
  const auto data = random_state(all, 1.0, 4);
  auto pick = [&](const Spectrum& part) {
    SpectralState st(part.size());
    for (std::size_t i = 0; i < part.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (all[j].label == part[i].label) {
          st.u_hat[static_cast<Eigen::Index>(i)] = data.u_hat[static_cast<Eigen::Index>(j)];
          st.ut_hat[static_cast<Eigen::Index>(i)] = data.ut_hat[static_cast<Eigen::Index>(j)];
        }
    return st;
  };
  SolveOptions opts;
  opts.keep_trajectories = true;
  const auto solve = [&](const Spectrum& sp, SpectralState st) {
    return solve_cauchy({sp, loglip_preset(), std::move(st), 0.0, 1.0, SobolevConvention::inhomogeneous,
                         Setting::compact},
                        fine(), 12.6, opts);
  };
  const auto r_all = solve(all, data);
  const auto r_lo = solve(lo, pick(lo));
  const auto r_hi = solve(hi, pick(hi));
  auto find = [](const SolutionReport& r, const std::string& label) -> const ModeTrajectory& {
    for (std::size_t k = 0; k < r.trajectory_labels.size(); ++k)
      if (r.trajectory_labels[k] == label) return r.trajectories[k];
    throw std::runtime_error("missing " + label);
  };
  for (const char* l : {"a", "b"}) CHECK(find(r_all, l).states == find(r_lo, l).states);
  for (const char* l : {"c", "d"}) CHECK(find(r_all, l).states == find(r_hi, l).states);
}

TEST_CASE("solver is deterministic across thread counts") {
  const auto sp = torus_spectrum(1, 20);
  const CauchyProblem p{sp, loglip_preset(), random_state(sp, 2.0, 9), 2.0, 1.0, SobolevConvention::inhomogeneous,
                        Setting::compact};
  SolveOptions one, four;
  four.threads = 4;
  const auto a = solve_cauchy(p, fine(), 12.6, one);
  const auto b = solve_cauchy(p, fine(), 12.6, four);
  CHECK(a.norm_u == b.norm_u);
  CHECK(a.norm_ut == b.norm_ut);
  CHECK(a.C_t == b.C_t);
}

TEST_CASE("zero modes and degenerate data") {
  const auto sp = torus_spectrum(1, 2);
  SpectralState st(3);
  st.u_hat[0] = 1.0;
  st.ut_hat[0] = 2.0;
  const CauchyProblem p{sp, make_constant(1.0), st, 0.0, 1.0, SobolevConvention::inhomogeneous, Setting::compact};
  const auto rep = solve_cauchy(p, fine(), 1.0);
  CHECK(rep.norm_u.back() == doctest::Approx(3.0));
  CHECK(rep.per_mode_amplification.empty());
  // Under the homogeneous convention the zero mode carries no norm on either side.
  const CauchyProblem h{sp, make_constant(1.0), st, 0.0, 1.0, SobolevConvention::homogeneous, Setting::compact};
  CHECK(solve_cauchy(h, fine(), 1.0).empirical_C == 0.0);
  const CauchyProblem z{sp, make_constant(1.0), SpectralState(3), 0.0, 1.0, SobolevConvention::inhomogeneous,
                        Setting::compact};
  CHECK(solve_cauchy(z, fine(), 1.0).empirical_C == 0.0);
}

TEST_CASE("theorem check") {
  SolutionReport a, b;
  a.empirical_C = 1.0;
  b.empirical_C = 1.05;
  CHECK(verify_theorem(a, b).passed);
  b.empirical_C = 1.2;
  CHECK_FALSE(verify_theorem(a, b).passed);
  CHECK(verify_theorem(a, b).relative_change == doctest::Approx(0.2));
  b.empirical_C = std::numeric_limits<double>::infinity();
  CHECK_FALSE(verify_theorem(a, b).passed);
  CHECK_FALSE(verify_theorem(b));
}

TEST_CASE("adversarial single high mode") {
  const auto p = single_mode(128.0, 1.0, 1.0, 0.0, 2.0);
  CauchyProblem q = p;
  q.coefficient = loglip_preset();
  IntegratorConfig cfg;
  const auto rep = solve_cauchy(q, cfg, 12.6);
  CHECK(verify_theorem(rep));
  CHECK(rep.empirical_C <= 1.0);
}

TEST_CASE("loss exponent fits") {
  std::vector<ModeAmplification> flat;
  for (double l : {8.0, 16.0, 32.0, 64.0}) flat.push_back({"", l, 3.0});
  CHECK(std::abs(fit_loss_exponent(flat)) < 1e-12);
  std::vector<ModeAmplification> power;
  for (double l : {2.0, 8.0, 16.0, 32.0, 64.0}) power.push_back({"", l, std::pow(l, 0.7)});
  CHECK(fit_loss_exponent(power) == doctest::Approx(0.7));
  CHECK_THROWS_AS(fit_loss_exponent(std::vector<ModeAmplification>{{"", 8.0, 1.0}}), InsufficientDataError);
  const auto single = solve_cauchy(single_mode(8.0, 1.0, 1.0, 0.0), fine(), 1.0);
  CHECK_FALSE(single.fitted_exponent.has_value());
  CHECK_THROWS_AS(fit_loss_exponent(single), InsufficientDataError);
}

TEST_CASE("sobolev-normalized data has decay-only norms") {
  const auto sp = torus_spectrum(1, 10);
  const auto raw = random_state(sp, 2.0, 1);
  const auto st = sobolev_normalized(raw, sp, 2.0, SobolevConvention::inhomogeneous, Setting::compact);
  double expect = 0.0;
  for (std::size_t j = 0; j < sp.size(); ++j) expect += sp[j].weight * std::norm(raw.u_hat[static_cast<Eigen::Index>(j)]);
  CHECK(sobolev_norm(st.u_hat, sp, 2.0, SobolevConvention::inhomogeneous) == doctest::Approx(std::sqrt(expect)));
}

TEST_CASE("contrast helpers") {
  std::vector<ContrastRow> up = {{8, 1, NAN}, {16, 2, 1.0}, {32, 4, 1.0}, {64, 10, 1.3}, {128, 30, 1.6}};
  CHECK(upper_half_slopes_nondecreasing(up));
  up[4].local_slope = 1.2;
  CHECK_FALSE(upper_half_slopes_nondecreasing(up));
  CHECK(max_local_slope(up) == 1.3);
  HoelderCuspParams hp;
  CHECK_THROWS_AS(hoelder_contrast(1.0, {8.0, 16.0}, hp, 1.0, IntegratorConfig{}), PreconditionError);
  CHECK_THROWS_AS(hoelder_contrast(0.0, {8.0, 16.0}, hp, 1.0, IntegratorConfig{}), PreconditionError);
}

TEST_CASE("near-Lipschitz cusp has flat amplification") {
  HoelderCuspParams hp{1.0, 1.0, 0.99, 0.0, 0.5};
  IntegratorConfig cfg;
  cfg.dt_max = 1e-4;
  const auto rows = hoelder_contrast(0.99, {16.0, 32.0, 64.0, 128.0}, hp, 1.0, cfg);
  CHECK(std::abs(max_local_slope(rows)) < 0.1);
}

TEST_CASE("oscillatory contrast reproduces the stored fixture") {
  std::ifstream in(std::string(LOGLIP_FIXTURE_DIR) + "/hoelder_contrast.json");
  REQUIRE(in.good());
  const auto fx = nlohmann::json::parse(in);
  const auto& pj = fx.at("preset").at("params");
  const HoelderCuspParams hp{pj.at("a_c").get<double>(), pj.at("kappa").get<double>(), pj.at("alpha").get<double>(),
                             pj.at("beta").get<double>(), pj.at("t0").get<double>()};
  IntegratorConfig cfg;
  cfg.dt_max = fx.at("integrator").at("dt_max").get<double>();
  cfg.cfl_c = fx.at("integrator").at("cfl_c").get<double>();
  const auto grid = fx.at("lambda").get<std::vector<double>>();
  const auto amp = fx.at("amplification").get<std::vector<double>>();
  const double rtol = fx.at("rtol").get<double>();
  const auto rows = hoelder_contrast(hp.alpha, grid, hp, fx.at("preset").at("T").get<double>(), cfg, 2);
  REQUIRE(rows.size() == amp.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rel(rows[i].amplification, amp[i]) <= rtol);
  CHECK(upper_half_slopes_nondecreasing(rows));
}
