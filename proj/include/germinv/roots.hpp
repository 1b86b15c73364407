#pragma once

#include <germinv/unipoly.hpp>

#include <vector>

namespace germinv {

/// A real root of a square-free rational polynomial, pinned by an isolating
/// interval [lo, hi]. When lo < hi the endpoints are not roots, so the
/// defining polynomial changes sign across the interval.
class AlgebraicReal {
 public:
  AlgebraicReal() : AlgebraicReal(Rational(0)) {}
  explicit AlgebraicReal(const Rational& r);
  /// Caller guarantees `defining` is square-free with exactly one root in [lo, hi].
  AlgebraicReal(UniPoly defining, Rational lo, Rational hi);

  const UniPoly& defining() const { return defining_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }

  /// Halves the interval; returns false when already degenerate.
  bool refine();
  /// Refines until width <= bound.
  void refine_to(const Rational& bound);
  double approx() const;

  /// Replaces the defining polynomial by a factor that still vanishes at the root.
  void restrict_defining(UniPoly factor);

 private:
  UniPoly defining_;
  Rational lo_, hi_;
  int sign_lo_ = 0;
};

/// Certified sign. Zero only when the root itself is certified to be 0.
int sign_of(AlgebraicReal a, int max_bits);

/// Sturm sequence of a square-free polynomial.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);
/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b);
/// Total number of distinct real roots.
int sturm_total(const std::vector<UniPoly>& seq);

/// Cauchy bound: every root has |r| < bound.
Rational root_bound(const UniPoly& p);

/// One AlgebraicReal per distinct real root, ascending. Rational roots come
/// back with degenerate intervals [r, r].
std::vector<AlgebraicReal> isolate_real_roots(const UniPoly& u);

}  // namespace germinv
