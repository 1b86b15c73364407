#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <germinv/errors.hpp>
#include <germinv/oracle.hpp>
#include <germinv/parser.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace germinv;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }

const char* const kFixtures[] = {"x^3 + y^6", "(x^2 - y^3)^2", "x^2 + y^4", "-x^2 - 2*y^6"};

double circ(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2 * std::numbers::pi);
  return std::min(d, 2 * std::numbers::pi - d);
}

}  // namespace

TEST_CASE("sphere extrema in closed form") {
  const auto e = sphere_extrema(P("x^2 + y^4"), 0.1, 1024, 1e-14);
  CHECK(e.psi == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(e.psibar == doctest::Approx(1e-2).epsilon(1e-12));
  const auto z = sphere_extrema(P("0"), 0.3, 64, 1e-14);
  CHECK(z.psi == 0.0);
  CHECK(z.psibar == 0.0);
  CHECK_THROWS_AS(sphere_extrema(P("x"), 0.1, 10, 1e-14), std::invalid_argument);
}

TEST_CASE("sphere extrema against a dense grid") {
  const BivarPoly f = P("x^3 + y^6");
  const DoublePoly fd(f);
  const double t = 0.1;
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < 1000000; ++k) {
    const double th = 2 * std::numbers::pi * k / 1000000;
    const double v = fd(t * std::cos(th), t * std::sin(th));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const auto e = sphere_extrema(f, t, 1024, 1e-14);
  CHECK(e.psi < 0);
  CHECK(e.psibar > 0);
  CHECK(e.psi <= lo);
  CHECK(e.psibar >= hi);
  CHECK(e.psi == doctest::Approx(lo).epsilon(1e-9));
  CHECK(e.psibar == doctest::Approx(hi).epsilon(1e-9));
  CHECK(e.psi == doctest::Approx(-1e-3).epsilon(1e-12));
}

TEST_CASE("extrema bound random circle values and refine monotonically") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  const RadiusLadder ladder(1e-3, 1e-1, 8);
  for (const char* s : kFixtures) {
    const BivarPoly f = P(s);
    const DoublePoly fd(f);
    for (double t : ladder.radii()) {
      const auto e = sphere_extrema(f, t, 256, 1e-14);
      for (int k = 0; k < 1000; ++k) {
        const double th = angle(rng);
        const double v = fd(t * std::cos(th), t * std::sin(th));
        CHECK(e.psi <= v);
        CHECK(v <= e.psibar);
      }
      const auto fine = sphere_extrema(f, t, 512, 1e-14);
      CHECK(fine.psi <= e.psi + 1e-14);
      CHECK(fine.psibar >= e.psibar - 1e-14);
    }
  }
}

TEST_CASE("critical paths of the fixtures") {
  const RadiusLadder ladder(OracleConfig{});
  const auto four = critical_paths(P("x^2 + y^4"), ladder, 1024, 1e-14);
  REQUIRE(four.size() == 4);
  const double quarter = std::numbers::pi / 2;
  for (int k = 0; k < 4; ++k) {
    bool near = false;
    for (const auto& p : four) near = near || circ(p.theta.front(), k * quarter) < 1e-6;
    CHECK(near);
  }
  CHECK(critical_paths(P("x^3 + y^6"), ladder, 1024, 1e-14).size() == 6);
  const auto lin = critical_paths(P("x"), ladder, 1024, 1e-14);
  REQUIRE(lin.size() == 2);
  CHECK(std::min(circ(lin[0].theta[0], 0), circ(lin[1].theta[0], 0)) < 1e-12);
  CHECK(std::min(circ(lin[0].theta[0], std::numbers::pi), circ(lin[1].theta[0], std::numbers::pi)) < 1e-12);
  CHECK_THROWS_AS(critical_paths(P("x^2 + y^2"), ladder, 1024, 1e-14), std::invalid_argument);
}

TEST_CASE("nearly coincident critical angles are separated") {
  // Two critical angles of x^3 + y^6 near pi/2 are about 2 t^3 apart.
  const AngularFamily fam(P("x^3 + y^6"), 3);
  const auto angles = critical_angles(fam, 1e-4, 1024, 1e-15);
  REQUIRE(angles.size() == 6);
  int close = 0;
  for (std::size_t i = 0; i + 1 < angles.size(); ++i) close += (angles[i + 1] - angles[i]) < 1e-10 ? 1 : 0;
  CHECK(close == 2);
}

TEST_CASE("path count changes are flagged") {
  std::vector<CircleSample> samples(3);
  for (int k = 0; k < 3; ++k) {
    samples[k].t = 0.01 * (k + 1);
    samples[k].angles = {0.0, 3.0};
    samples[k].values = {1.0, 2.0};
  }
  samples[0].angles.push_back(5.0);
  samples[0].values.push_back(0.5);
  CHECK_THROWS_AS(link_paths(samples), GermError);
  samples[0].angles.pop_back();
  samples[0].values.pop_back();
  CHECK(link_paths(samples).size() == 2);
}

TEST_CASE("exponent fits on exact power laws") {
  const RadiusLadder ladder(OracleConfig{});
  std::vector<double> t = ladder.radii(), v4, v6, zeros(t.size(), 0.0), mixed;
  for (double s : t) {
    v4.push_back(s * s * s * s);
    v6.push_back(-2 * std::pow(s, 6));
    mixed.push_back(mixed.size() % 2 ? s : -s);
  }
  const auto f4 = estimate_exponent(t, v4, 0.0);
  CHECK(f4.alpha_est == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(f4.sign_est == 1);
  CHECK(f4.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f4.samples_used == 40);
  const auto f6 = estimate_exponent(t, v6, 0.0);
  CHECK(f6.alpha_est == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(f6.sign_est == -1);
  const auto fz = estimate_exponent(t, zeros, 1e-14);
  CHECK(fz.status == FitStatus::AllBelowFloor);
  CHECK(fz.sign_est == 0);
  const auto fm = estimate_exponent(t, mixed, 0.0);
  CHECK(fm.status == FitStatus::MixedSigns);
  CHECK(fm.r_squared == 0.0);
  // Samples under the floor are dropped.
  const auto ff = estimate_exponent(t, v4, 1e-8);
  CHECK(ff.samples_used < 40);
  CHECK(ff.alpha_est == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("psi of the first fixture") {
  const OracleConfig cfg;
  const AngularFamily fam(P("x^3 + y^6"), cfg.split_depth);
  const auto samples = sweep_serial(fam, RadiusLadder(cfg), cfg.grid, cfg.tol);
  std::vector<double> t, psi;
  for (const auto& s : samples) {
    t.push_back(s.t);
    psi.push_back(s.psi);
    CHECK(s.psi < 0);
    CHECK(s.psibar > 0);
  }
  const auto fit = estimate_exponent(t, psi, 1e-14);
  CHECK(fit.alpha_est == doctest::Approx(3.0).epsilon(0.05 / 3));
  CHECK(fit.sign_est == -1);
}

TEST_CASE("serial and parallel sweeps agree exactly") {
  const OracleConfig cfg;
  for (const char* s : kFixtures) {
    const AngularFamily fam(P(s), cfg.split_depth);
    const RadiusLadder ladder(cfg);
    const auto a = sweep_serial(fam, ladder, cfg.grid, cfg.tol);
    const auto b = sweep_parallel(fam, ladder, cfg.grid, cfg.tol);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].t == b[k].t);
      CHECK(a[k].psi == b[k].psi);
      CHECK(a[k].psibar == b[k].psibar);
      CHECK(a[k].angles == b[k].angles);
      CHECK(a[k].values == b[k].values);
    }
  }
}

TEST_CASE("crosscheck on fixtures and trivial germs") {
  for (const char* s : kFixtures) {
    CAPTURE(s);
    const auto rep = crosscheck(P(s));
    CHECK(rep.pass);
    CHECK(rep.psi_residual <= 1e-9);
    CHECK(rep.psibar_residual <= 1e-9);
    CHECK(rep.path_count == rep.component_count);
  }
  const auto ii = crosscheck(P("(x^2 - y^3)^2"));
  int below = 0;
  for (const auto& pc : ii.path_checks) below += pc.fit.status == FitStatus::AllBelowFloor ? 1 : 0;
  CHECK(below == 2);
  CHECK(ii.psi_fit.status == FitStatus::AllBelowFloor);

  const auto zero = crosscheck(P("0"));
  CHECK(zero.pass);
  for (const auto& s : zero.samples) {
    CHECK(s.psi == 0.0);
    CHECK(s.psibar == 0.0);
  }
  CHECK(crosscheck(P("x^2 + y^2")).pass);
}

TEST_CASE("oracle configuration is validated") {
  OracleConfig c;
  c.grid = 32;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = OracleConfig{};
  c.t_min = 0.2;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  CHECK_THROWS_AS(RadiusLadder(1e-3, 1e-1, 4), std::invalid_argument);
  const RadiusLadder l(1e-4, 1e-1, 40);
  CHECK(l.radii().front() == doctest::Approx(1e-4));
  CHECK(l.radii().back() == 1e-1);
}
