#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <germinv/errors.hpp>
#include <germinv/roots.hpp>

#include <random>

using namespace germinv;

namespace {

UniPoly from_roots(const std::vector<Rational>& roots) {
  UniPoly p = UniPoly::constant(Rational(1));
  for (const auto& r : roots) p *= UniPoly::linear_root(r);
  return p;
}

}  // namespace

TEST_CASE("isolation of an irreducible quintic") {
  // t^5 - 4t^3 + 2t - 1/3; roots computed separately.
  const UniPoly u{make_rational(-1, 3), Rational(2), Rational(0), Rational(-4), Rational(0), Rational(1)};
  const auto roots = isolate_real_roots(u);
  REQUIRE(roots.size() == 5);
  const double expected[] = {-1.82982801523722, -0.855033591245024, 0.177823804761544, 0.642615300720565,
                             1.86442250100014};
  for (int k = 0; k < 5; ++k) {
    CHECK(roots[k].approx() == doctest::Approx(expected[k]).epsilon(1e-13));
    CHECK(!roots[k].is_rational());
    CHECK(u.sign_at(roots[k].lo()) * u.sign_at(roots[k].hi()) < 0);
  }
  const auto seq = sturm_sequence(u);
  CHECK(sturm_count(seq, Rational(0), Rational(1)) == 2);
  CHECK(sturm_total(seq) == 5);
}

TEST_CASE("rational roots are pinned exactly") {
  const UniPoly p = from_roots({make_rational(-7, 3), Rational(0), make_rational(1, 2), Rational(5)});
  const auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].lo() == make_rational(-7, 3));
  CHECK(roots[1].lo() == 0);
  CHECK(roots[2].lo() == make_rational(1, 2));
  CHECK(roots[3].lo() == 5);
  for (const auto& r : roots) CHECK(r.is_rational());
}

TEST_CASE("non-square-free input yields distinct roots") {
  const UniPoly p = from_roots({Rational(1), Rational(1), Rational(1), make_rational(-3, 2)}) *
                    UniPoly{Rational(-2), Rational(0), Rational(1)};
  const auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0].approx() == doctest::Approx(-1.5));
  CHECK(roots[1].approx() == doctest::Approx(-1.4142135623730951));
  CHECK(roots[2].approx() == doctest::Approx(1.0));
  CHECK(roots[3].approx() == doctest::Approx(1.4142135623730951));
}

TEST_CASE("zero polynomial is rejected; constants have no roots") {
  CHECK_THROWS_AS(isolate_real_roots(UniPoly{}), GermError);
  CHECK(isolate_real_roots(UniPoly::constant(Rational(3))).empty());
  CHECK(isolate_real_roots(UniPoly{Rational(1), Rational(0), Rational(1)}).empty());
}

TEST_CASE("signs of algebraic numbers") {
  const AlgebraicReal sqrt2(UniPoly{Rational(-2), Rational(0), Rational(1)}, Rational(1), Rational(2));
  CHECK(sign_of(sqrt2, 64) == 1);
  CHECK(sign_of(AlgebraicReal(Rational(0)), 64) == 0);
  CHECK(sign_of(AlgebraicReal(make_rational(-1, 5)), 64) == -1);
  const AlgebraicReal tiny(UniPoly{Rational(-1), Rational(0), Rational(1000000)}, Rational(-1), Rational(0) - make_rational(1, 10000));
  CHECK(sign_of(tiny, 64) == -1);
}

TEST_CASE("refinement keeps the root") {
  AlgebraicReal r(UniPoly{Rational(-2), Rational(0), Rational(1)}, Rational(0), Rational(2));
  r.refine_to(pow2(-100));
  CHECK(r.width() <= pow2(-100));
  CHECK(r.lo() * r.lo() < 2);
  CHECK(r.hi() * r.hi() > 2);
}

TEST_CASE("root count matches Sturm on random polynomials") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> deg(1, 8), coef(-6, 6), den(1, 5);
  for (int k = 0; k < 80; ++k) {
    std::vector<Rational> cs;
    const int d = deg(rng);
    for (int i = 0; i <= d; ++i) cs.push_back(make_rational(coef(rng), den(rng)));
    if (cs.back() == 0) cs.back() = 1;
    const UniPoly u(cs);
    const auto roots = isolate_real_roots(u);
    const UniPoly s = squarefree(u);
    CHECK(static_cast<int>(roots.size()) == sturm_total(sturm_sequence(s)));
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) CHECK(roots[i].hi() < roots[i + 1].lo());
    for (const auto& r : roots) {
      const int count = sturm_count(sturm_sequence(s), r.lo() - (r.is_rational() ? pow2(-200) : Rational(0)), r.hi());
      CHECK(count == 1);
    }
  }
}
