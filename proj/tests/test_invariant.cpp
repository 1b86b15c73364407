#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <germinv/invariant.hpp>
#include <germinv/parser.hpp>

using namespace germinv;

namespace {

GermInvariant inv_of(const char* s) { return analyze(parse_poly(s)).inv; }

GermInvariant I(long a, long b) { return {Rational(a), Rational(b)}; }

Classification make(std::vector<int> k0, std::vector<long> minus, std::vector<long> plus) {
  Classification c;
  c.K0 = std::move(k0);
  int id = 100;
  for (long a : minus) c.Kminus.emplace_back(id++, Rational(a));
  for (long a : plus) c.Kplus.emplace_back(id++, Rational(a));
  return c;
}

}  // namespace

TEST_CASE("the six cases of the table") {
  CHECK(invariant(make({}, {3, 5}, {4, 2})) == I(-3, 2));
  CHECK(invariant(make({0}, {}, {4, 2})) == I(0, 2));
  CHECK(invariant(make({0}, {3, 5}, {})) == I(-3, 0));
  CHECK(invariant(make({}, {}, {4, 2, 7})) == I(2, 7));
  CHECK(invariant(make({}, {3, 5}, {})) == I(-5, -3));
  CHECK(invariant(make({0, 1}, {}, {})) == I(0, 0));
  const Classification frac = [] {
    Classification c;
    c.Kplus.emplace_back(0, make_rational(7, 2));
    c.Kplus.emplace_back(1, Rational(2));
    return c;
  }();
  CHECK(invariant(frac) == GermInvariant(Rational(2), make_rational(7, 2)));
}

TEST_CASE("canonical order and negation") {
  CHECK(I(-2, -6) == I(-6, -2));
  CHECK(I(-2, -6).lo() == -6);
  CHECK(negate(I(2, 4)) == I(-4, -2));
  CHECK(negate(I(0, 0)) == I(0, 0));
  CHECK(negate(I(-3, 3)) == I(-3, 3));
  for (const auto& v : {I(2, 4), I(-6, -2), I(0, 4), I(-3, 3), I(-5, 0)}) CHECK(negate(negate(v)) == v);
}

TEST_CASE("classification partitions the components") {
  const auto a = analyze(parse_poly("x^3 + y^6"));
  CHECK(a.classification.K0.empty());
  REQUIRE(a.classification.Kminus.size() == 1);
  CHECK(a.classification.Kminus[0].second == 3);
  CHECK(a.classification.Kplus.size() == 5);
  const auto b = analyze(parse_poly("(x^2 - y^3)^2"));
  CHECK(b.classification.K0.size() == 2);
  CHECK(b.classification.Kminus.empty());
  CHECK(b.classification.Kplus.size() == 4);
  const auto z = analyze(parse_poly("0"));
  CHECK(z.classification.K0.size() == z.restrictions.size());
  CHECK(z.inv == I(0, 0));
  CHECK_THROWS_AS(classify({}), std::invalid_argument);
}

TEST_CASE("fixture invariants") {
  CHECK(inv_of("x^3 + y^6") == I(-3, 3));
  CHECK(inv_of("(x^2 - y^3)^2") == I(0, 4));
  CHECK(inv_of("x^2 + y^4") == I(2, 4));
  CHECK(inv_of("-x^2 - 2*y^6") == I(-6, -2));
  CHECK(inv_of("x^2 + y^2") == I(2, 2));
  CHECK(inv_of("x") == I(-1, 1));
}

TEST_CASE("comparison verdicts") {
  CHECK(equivalent_possible(inv_of("x^3 + y^6"), inv_of("(x^2 - y^3)^2")) == Verdict::Excluded);
  CHECK(equivalent_possible(inv_of("x^3 + y^6"), inv_of("x^3 + y^6")) == Verdict::Possible);
  CHECK(inv_of("-x^2 - y^4") == I(-4, -2));
  CHECK(equivalent_possible(inv_of("x^2 + y^4"), inv_of("-x^2 - y^4")) == Verdict::Possible);
  CHECK(verdict_name(Verdict::Excluded) == "excluded");
}
