#pragma once

#include <germinv/bivar_poly.hpp>
#include <germinv/puiseux.hpp>

#include <optional>
#include <vector>

namespace germinv {

struct ExpansionConfig {
  int order = 12;
  int max_order = 96;
  int max_bits = 256;
};

/// Validates 0 < order <= max_order and max_bits > 0.
void validate(const ExpansionConfig& cfg);

/// The curve y*df/dx - x*df/dy = 0 where level sets of f touch circles.
struct TangencyCurve {
  BivarPoly h;
  BivarPoly h_sf;
  bool degenerate = false;
};

/// Leading behaviour of f along one component: sign of the leading
/// coefficient and the exponent with respect to the distance to the origin.
struct Restriction {
  HalfBranch component;
  int sign = 0;
  std::optional<Rational> alpha;
  PuiseuxSeries series;
};

/// Throws NonVanishingGerm when f(0,0) != 0.
TangencyCurve tangency_poly(const BivarPoly& f);

/// The synthetic component (s, 0) standing for a whole punctured neighbourhood.
HalfBranch radial_component();

std::vector<HalfBranch> components(const BivarPoly& f, const ExpansionConfig& cfg = {});
std::vector<HalfBranch> components(const TangencyCurve& tc, const ExpansionConfig& cfg = {});

Restriction restrict(const BivarPoly& f, const HalfBranch& b, const ExpansionConfig& cfg = {});
Restriction restrict(const BivarPoly& f, const TangencyCurve& tc, const HalfBranch& b,
                     const ExpansionConfig& cfg = {});

/// True iff f vanishes identically along b. An exactly cancelling
/// substitution certifies directly; otherwise b must be a branch of
/// g = gcd(f, h_sf), which is decided by g vanishing along b past the
/// intersection bound deg(g) * deg(h_sf / g).
bool certify_zero_branch(const BivarPoly& f, const BivarPoly& h_sf, const HalfBranch& b,
                         const ExpansionConfig& cfg = {});

}  // namespace germinv
