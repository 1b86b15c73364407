#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <germinv/errors.hpp>
#include <germinv/oracle.hpp>
#include <germinv/parser.hpp>
#include <germinv/tangency.hpp>

#include <algorithm>
#include <cmath>

using namespace germinv;

namespace {

BivarPoly P(const char* s) { return parse_poly(s); }

HalfBranch find(const std::vector<HalfBranch>& bs, Chart chart, int side) {
  for (const auto& b : bs) {
    if (b.chart == chart && b.side == side) return b;
  }
  FAIL("component not found");
  return {};
}

const char* const kFixtures[] = {"x^3 + y^6", "(x^2 - y^3)^2", "x^2 + y^4", "-x^2 - 2*y^6"};

}  // namespace

TEST_CASE("tangency polynomial") {
  CHECK(tangency_poly(P("x^3 + y^6")).h == P("3*x^2*y - 6*x*y^5"));
  CHECK(tangency_poly(P("(x^2 - y^3)^2")).h == P("2*x*y*(3*y + 2)*(x^2 - y^3)"));
  CHECK(tangency_poly(P("x^2 + y^4")).h == P("2*x*y - 4*x*y^3"));
  CHECK(tangency_poly(P("-x^2 - 2*y^6")).h == P("-2*x*y + 12*x*y^5"));
  CHECK(tangency_poly(P("x")).h == P("y"));
  const auto radial = tangency_poly(P("x^2 + y^2"));
  CHECK(radial.degenerate);
  CHECK(radial.h.is_zero());
  CHECK_THROWS_AS(tangency_poly(P("1 + x")), GermError);
}

TEST_CASE("components of the fixtures") {
  CHECK(components(P("x^3 + y^6")).size() == 6);
  CHECK(components(P("(x^2 - y^3)^2")).size() == 6);
  CHECK(components(P("x^2 + y^4")).size() == 4);
  CHECK(components(P("-x^2 - 2*y^6")).size() == 4);
  const auto radial = components(P("x^2 + y^2"));
  REQUIRE(radial.size() == 1);
  CHECK(radial[0].chart == Chart::Radial);
  CHECK(components(P("x")).size() == 2);
}

TEST_CASE("restrictions along components") {
  const BivarPoly f = P("x^3 + y^6");
  const auto bs = components(f);
  const auto up = restrict(f, find(bs, Chart::YAxis, 1));
  CHECK(up.sign == 1);
  CHECK(*up.alpha == 6);
  const auto left = restrict(f, find(bs, Chart::XAxis, -1));
  CHECK(left.sign == -1);
  CHECK(*left.alpha == 3);

  const BivarPoly g = P("(x^2 - y^3)^2");
  int zero = 0;
  for (const auto& b : components(g)) {
    const auto r = restrict(g, b);
    if (r.sign == 0) {
      ++zero;
      CHECK(b.chart == Chart::YDominant);
      CHECK(b.norm_order == 2);
      CHECK(!r.alpha);
    }
  }
  CHECK(zero == 2);

  const auto rad = restrict(P("x^2 + y^2"), radial_component());
  CHECK(rad.sign == 1);
  CHECK(*rad.alpha == 2);
  CHECK(restrict(P("0"), radial_component()).sign == 0);
}

TEST_CASE("ramified exponents are rational") {
  // Along y = x^(3/2) f = x^7 + ...; the component parameter has m = 2.
  const BivarPoly f = P("(y^2 - 2*x^3)^2 + x^7");
  bool found = false;
  for (const auto& b : components(f)) {
    const auto r = restrict(f, b);
    if (b.e == 2) {
      found = true;
      CHECK(r.sign == 1);
      CHECK(*r.alpha == 7);
    }
  }
  CHECK(found);
  // On x^2 = -3/2 y^3, y = -s^2: f = -2c s^11 with c = +-sqrt(3/2).
  const BivarPoly g = P("-2/3*x^3*y - 3*x*y^4");
  int half = 0, signs = 0;
  for (const auto& b : components(g)) {
    const auto r = restrict(g, b);
    if (b.chart == Chart::YDominant && b.e == 2) {
      ++half;
      signs += r.sign;
      CHECK(b.side == -1);
      CHECK(*r.alpha == make_rational(11, 2));
    }
  }
  CHECK(half == 2);
  CHECK(signs == 0);
}

TEST_CASE("certifying identically vanishing restrictions") {
  const BivarPoly g = P("(x^2 - y^3)^2");
  const auto tc = tangency_poly(g);
  for (const auto& b : components(tc)) {
    if (b.chart == Chart::YDominant) CHECK(certify_zero_branch(g, tc.h_sf, b));
  }
  const BivarPoly f = P("x^3 + y^6");
  const auto tf = tangency_poly(f);
  for (const auto& b : components(tf)) CHECK(!certify_zero_branch(f, tf.h_sf, b));

  // f = x on the y-axis: the substitution cancels exactly even though
  // gcd(x, y) = 1.
  HalfBranch axis;
  axis.chart = Chart::YAxis;
  axis.y.terms.emplace(1, UniPoly::constant(Rational(1)));
  CHECK(certify_zero_branch(P("x"), P("y"), axis));

  // Vanishing to high order without a common factor: the gcd screen rejects.
  const BivarPoly h = P("y^2 - 2*x^2 + x^3");
  const BivarPoly close = h + P("x^40");
  for (const auto& b : expand_branches(h, 12, 256)) {
    REQUIRE(substitute(close, b, 12).terms.empty());
    CHECK(!certify_zero_branch(close, h, b));
  }
}

TEST_CASE("resource errors are reported, not guessed") {
  ExpansionConfig small{4, 4, 256};
  const BivarPoly h = P("y^2 - 2*x^2 + x^3");
  const BivarPoly close = h * P("1 + x^2") + P("x^40");
  const auto b = expand_branches(h, 4, 256).front();
  // Vanishing past max_order without certification.
  CHECK_THROWS_AS(restrict(close, tangency_poly(h), b, small), GermError);
  CHECK_THROWS_AS(validate(ExpansionConfig{0, 5, 10}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ExpansionConfig{8, 5, 10}), std::invalid_argument);
}

TEST_CASE("components lie on the tangency curve and come in real pairs") {
  for (const char* s : kFixtures) {
    const auto tc = tangency_poly(P(s));
    const auto bs = components(tc);
    for (const auto& b : bs) CHECK(substitute(tc.h_sf, b, 12).terms.empty());
    // Each whole real branch through the origin gives two half-branches.
    CHECK(bs.size() % 2 == 0);
  }
}

TEST_CASE("scaling and negation of restrictions") {
  for (const char* s : kFixtures) {
    const BivarPoly f = P(s);
    for (const auto& b : components(f)) {
      const auto r = restrict(f, b);
      const auto scaled = restrict(make_rational(7, 3) * f, b);
      const auto neg = restrict(-f, b);
      CHECK(scaled.sign == r.sign);
      CHECK(scaled.alpha == r.alpha);
      CHECK(neg.sign == -r.sign);
      CHECK(neg.alpha == r.alpha);
    }
  }
}

TEST_CASE("numerical consistency along components") {
  for (const char* s : kFixtures) {
    const BivarPoly f = P(s);
    const DoublePoly fd(f);
    for (const auto& b : components(f)) {
      const auto r = restrict(f, b);
      if (r.sign == 0) continue;
      const double alpha = to_double(*r.alpha);
      double lo = INFINITY, hi = 0;
      for (int k = 0; k < 20; ++k) {
        const double t = 1e-4 * std::pow(100.0, k / 19.0);
        const auto [x, y] = component_point(b, t);
        CHECK(std::hypot(x, y) == doctest::Approx(t).epsilon(1e-12));
        const double ratio = fd(x, y) * r.sign / std::pow(t, alpha);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      CHECK(lo > 0.1);
      CHECK(hi < 10.0);
    }
  }
}
