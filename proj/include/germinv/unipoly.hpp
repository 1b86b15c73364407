#pragma once

#include <germinv/rational.hpp>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace germinv {

/// Dense univariate polynomial over Q, lowest degree first. The zero
/// polynomial has an empty coefficient list; otherwise the last entry is
/// nonzero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(std::initializer_list<Rational> coeffs);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, int degree);
  /// The linear polynomial t - r.
  static UniPoly linear_root(const Rational& r);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& lead() const { return coeffs_.back(); }

  Rational operator()(const Rational& t) const;
  double eval(double t) const;
  int sign_at(const Rational& t) const { return sign((*this)(t)); }

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Integer coefficients with content 1 and positive leading coefficient.
  UniPoly primitive() const;
  /// p(t + a)
  UniPoly shift(const Rational& a) const;
  /// p(q(t))
  UniPoly compose(const UniPoly& q) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& c);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
  friend UniPoly operator-(UniPoly a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 't') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division; divisor must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);
/// Quotient when b divides a exactly, otherwise throws std::domain_error.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
bool divides(const UniPoly& b, const UniPoly& a);

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Returns (g, s) with s*a = g (mod m) where g = gcd(a, m) monic.
std::pair<UniPoly, UniPoly> gcd_cofactor(const UniPoly& a, const UniPoly& m);

/// Product of distinct irreducible factors, monic.
UniPoly squarefree(const UniPoly& p);

/// Resultant over Q.
Rational resultant(const UniPoly& a, const UniPoly& b);

/// Horner evaluation over a rational interval; returns an enclosure of the range.
std::pair<Rational, Rational> eval_interval(const UniPoly& p, const Rational& lo, const Rational& hi);

}  // namespace germinv
