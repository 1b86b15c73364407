#pragma once

#include <germinv/rational.hpp>
#include <germinv/unipoly.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace germinv {

/// Exponent pair (i, j) of the monomial x^i y^j.
struct Exponent {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
  int total() const { return i + j; }
};

enum class Var { X, Y };

/// Sparse bivariate polynomial over Q. Zero coefficients are never stored.
class BivarPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  BivarPoly() = default;
  explicit BivarPoly(TermMap terms);

  static BivarPoly constant(const Rational& c);
  static BivarPoly monomial(const Rational& c, int i, int j);
  static BivarPoly x() { return monomial(Rational(1), 1, 0); }
  static BivarPoly y() { return monomial(Rational(1), 0, 1); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coeff(int i, int j) const;
  Rational constant_term() const { return coeff(0, 0); }

  int total_degree() const;
  int degree_in(Var v) const;
  /// Lowest total degree of a stored term; -1 for zero.
  int order() const;

  Rational operator()(const Rational& x, const Rational& y) const;
  double eval(double x, double y) const;

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly& operator*=(const BivarPoly& o);
  BivarPoly& operator*=(const Rational& c);

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(BivarPoly a, const Rational& c) { return a *= c; }
  friend BivarPoly operator*(const Rational& c, BivarPoly a) { return a *= c; }
  friend BivarPoly operator-(BivarPoly a) { return a *= Rational(-1); }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

  BivarPoly pow(int k) const;
  /// f(X(x,y), Y(x,y))
  BivarPoly compose(const BivarPoly& X, const BivarPoly& Y) const;
  BivarPoly swapped() const;

  /// Leading term in graded-lexicographic order (total degree, then x-degree).
  std::pair<Exponent, Rational> grlex_lead() const;
  /// Integer coefficients with gcd 1 and positive grlex leading coefficient.
  BivarPoly normalized() const;

  /// Coefficients in y over Q[x]: result[j] is the coefficient of y^j.
  std::vector<UniPoly> as_poly_in_y() const;
  static BivarPoly from_poly_in_y(const std::vector<UniPoly>& cs);
  /// The univariate polynomial in x when deg_y == 0.
  UniPoly as_univariate_x() const;

  double l1_norm() const;

 private:
  TermMap terms_;
};

bool grlex_less(const Exponent& a, const Exponent& b);

BivarPoly diff(const BivarPoly& p, Var v);

/// Quotient if b divides a exactly.
std::optional<BivarPoly> divide_exact(const BivarPoly& a, const BivarPoly& b);

/// Primitive gcd, normalized; throws BothZero when both inputs vanish.
BivarPoly gcd_bivar(const BivarPoly& p, const BivarPoly& q);

/// Product of the distinct irreducible factors, normalized; throws ZeroInput.
BivarPoly squarefree_part(const BivarPoly& p);

}  // namespace germinv
