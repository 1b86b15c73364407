#pragma once

#include <germinv/tangency.hpp>

#include <string>
#include <utility>
#include <vector>

namespace germinv {

struct Classification {
  std::vector<int> K0;
  std::vector<std::pair<int, Rational>> Kminus;
  std::vector<std::pair<int, Rational>> Kplus;
};

/// Inv(f), stored sorted so that lo <= hi.
class GermInvariant {
 public:
  GermInvariant() = default;
  GermInvariant(Rational a, Rational b);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  friend bool operator==(const GermInvariant&, const GermInvariant&) = default;

 private:
  Rational lo_{0}, hi_{0};
};

std::string to_string(const GermInvariant& v);

enum class Verdict { Possible, Excluded };

std::string_view verdict_name(Verdict v);

Classification classify(const std::vector<Restriction>& restrictions);

/// The six-case table, canonicalized.
GermInvariant invariant(const Classification& c);

/// (a, b) -> (-b, -a), canonicalized.
GermInvariant negate(const GermInvariant& v);

/// Excluded proves non-equivalence; Possible proves nothing.
Verdict equivalent_possible(const GermInvariant& vf, const GermInvariant& vg);

/// Everything computed for one germ.
struct GermAnalysis {
  BivarPoly f;
  TangencyCurve tangency;
  std::vector<Restriction> restrictions;
  Classification classification;
  GermInvariant inv;
};

/// Full pipeline: tangency curve, components, restrictions, table.
GermAnalysis analyze(const BivarPoly& f, const ExpansionConfig& cfg = {});

}  // namespace germinv
