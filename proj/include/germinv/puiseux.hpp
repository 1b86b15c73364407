#pragma once

#include <germinv/bivar_poly.hpp>
#include <germinv/number_field.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace germinv {

/// Which coordinate is the exact monomial +-s^e. Axis charts are the
/// coordinate half-lines; Radial is the synthetic component used when the
/// tangency polynomial vanishes identically.
enum class Chart { YAxis, XAxis, XDominant, YDominant, Radial };

std::string_view chart_name(Chart c);

/// sum_k c_k s^k. Coefficients are residues in the owning branch's field.
/// All terms with index <= truncation are exact; no truncation means the
/// series is an exact finite sum.
struct PuiseuxSeries {
  int ramification = 1;
  std::map<int, UniPoly> terms;
  std::optional<int> truncation;

  bool is_exact() const { return !truncation.has_value(); }
  /// Smallest stored index, if any.
  std::optional<int> lowest() const;
};

struct NewtonPolygonEdge {
  /// Negated growth exponent: a branch y ~ c x^mu comes from an edge of slope -mu.
  Rational slope;
  UniPoly edge_poly;
  std::vector<Exponent> support;
};

struct LockedChain;

/// One connected component of {p = 0} minus the origin, near 0.
struct HalfBranch {
  Chart chart = Chart::XDominant;
  int side = 1;
  int e = 1;
  NumberField field;
  PuiseuxSeries x, y;
  int norm_order = 1;
  /// Expansion state past the last fork, for extension to higher order.
  std::shared_ptr<const LockedChain> continuation;

  const PuiseuxSeries& dominant() const;
  const PuiseuxSeries& other() const;
  bool is_exact() const { return x.is_exact() && y.is_exact(); }
  int truncation() const;
};

/// Compact edges of the lower Newton hull with negative slope, sorted by slope.
/// Throws ZeroInput for p == 0 and UnitGerm when p(0,0) != 0.
std::vector<NewtonPolygonEdge> newton_polygon(const BivarPoly& p);

/// All real half-branches of a square-free p at the origin, each series
/// correct to at least `order`.
std::vector<HalfBranch> expand_branches(const BivarPoly& p, int order, int max_bits);

/// The same branch with series correct to at least `order`.
HalfBranch extend(const HalfBranch& b, int order);

/// f(x(s), y(s)) with all terms of index <= the branch truncation exact,
/// zero coefficients removed. Extends the branch to `order` first.
PuiseuxSeries substitute(const BivarPoly& f, const HalfBranch& b, int order);

/// Evaluates the branch point at parameter s in floating point.
std::pair<double, double> branch_point(const HalfBranch& b, double s);

}  // namespace germinv
