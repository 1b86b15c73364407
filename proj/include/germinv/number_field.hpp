#pragma once

#include <germinv/roots.hpp>
#include <germinv/unipoly.hpp>

#include <vector>

namespace germinv {

/// Q(a) for a real algebraic number a, elements stored as residues mod the
/// generator's defining polynomial. The defining polynomial is square-free
/// but may be reducible; whenever a zero test or inversion exposes a proper
/// factor, the field switches to the factor that vanishes at a. Residues
/// stay valid across such switches because the new modulus divides the old.
class NumberField {
 public:
  /// The field Q, generated by the rational 0.
  NumberField() = default;
  explicit NumberField(AlgebraicReal generator);

  const AlgebraicReal& generator() const { return gen_; }
  const UniPoly& modulus() const { return gen_.defining(); }
  int degree() const { return modulus().degree(); }
  bool is_rational() const { return degree() == 1; }

  UniPoly reduce(const UniPoly& r) const;
  UniPoly mul(const UniPoly& a, const UniPoly& b) const { return reduce(a * b); }
  UniPoly pow(const UniPoly& a, int k) const;
  UniPoly from_rational(const Rational& c) const { return UniPoly::constant(c); }
  /// Rational value of a residue in the rational field.
  Rational as_rational(const UniPoly& r) const;

  /// Exact zero test.
  bool is_zero(const UniPoly& r);
  /// Inverse of a residue that is not zero.
  UniPoly inverse(const UniPoly& r);
  /// Certified sign; refines the generator interval as needed.
  int sign(const UniPoly& r, int max_bits);
  double approx(const UniPoly& r) const;

  friend bool operator==(const NumberField& a, const NumberField& b) {
    return a.modulus() == b.modulus() && a.gen_.lo() == b.gen_.lo() && a.gen_.hi() == b.gen_.hi();
  }

 private:
  AlgebraicReal gen_;
};

/// Dense polynomial over a NumberField, coefficients are residues.
using FieldPoly = std::vector<UniPoly>;

/// A real root of a polynomial over K, living in a (possibly larger) field L.
/// `embed` is the image of K's generator in L.
struct FieldRoot {
  NumberField field;
  UniPoly embed;
  UniPoly root;
};

/// Maps a residue of the old field through an embedding into `target`.
UniPoly embed_residue(const UniPoly& r, const UniPoly& embed, const NumberField& target);

/// Distinct nonzero real roots of E over K. E must have a nonzero constant
/// coefficient after trailing zeros are stripped by the caller.
std::vector<FieldRoot> nonzero_real_roots(NumberField& field, FieldPoly E, int max_bits);

/// Polynomial interpolation through (k, values[k]) for k = 0..n-1.
UniPoly interpolate_at_integers(const std::vector<Rational>& values);

}  // namespace germinv
