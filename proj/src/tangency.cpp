#include <germinv/tangency.hpp>

#include <germinv/errors.hpp>

#include <algorithm>

namespace germinv {

void validate(const ExpansionConfig& cfg) {
  if (cfg.order <= 0 || cfg.order > cfg.max_order || cfg.max_bits <= 0) {
    throw std::invalid_argument("expansion config requires 0 < order <= max_order and max_bits > 0");
  }
}

TangencyCurve tangency_poly(const BivarPoly& f) {
  if (f.constant_term() != 0) throw GermError(ErrorKind::NonVanishingGerm, "f(0,0) != 0");
  TangencyCurve tc;
  tc.h = BivarPoly::y() * diff(f, Var::X) - BivarPoly::x() * diff(f, Var::Y);
  tc.degenerate = tc.h.is_zero();
  if (!tc.degenerate) tc.h_sf = squarefree_part(tc.h);
  return tc;
}

HalfBranch radial_component() {
  HalfBranch b;
  b.chart = Chart::Radial;
  b.side = 1;
  b.e = 1;
  b.norm_order = 1;
  b.x.terms.emplace(1, UniPoly::constant(Rational(1)));
  return b;
}

std::vector<HalfBranch> components(const TangencyCurve& tc, const ExpansionConfig& cfg) {
  validate(cfg);
  if (tc.degenerate) return {radial_component()};
  return expand_branches(tc.h_sf, cfg.order, cfg.max_bits);
}

std::vector<HalfBranch> components(const BivarPoly& f, const ExpansionConfig& cfg) {
  return components(tangency_poly(f), cfg);
}

bool certify_zero_branch(const BivarPoly& f, const BivarPoly& h_sf, const HalfBranch& b, const ExpansionConfig& cfg) {
  const PuiseuxSeries direct = substitute(f, b, std::min(cfg.order, b.truncation()));
  if (direct.is_exact()) return direct.terms.empty();
  if (!direct.terms.empty()) return false;
  if (f.is_zero()) return true;

  const BivarPoly g = gcd_bivar(f, h_sf);
  if (g.total_degree() < 1) return false;
  const auto cofactor = divide_exact(h_sf, g);
  if (!cofactor) throw std::logic_error("gcd does not divide its argument");
  const int dc = cofactor->total_degree();
  if (dc <= 0) return true;
  const int bound = g.total_degree() * dc + 1;
  if (bound > cfg.max_order) {
    throw GermError(ErrorKind::CertificationInconclusive,
                    "intersection bound " + std::to_string(bound) + " exceeds max order " +
                        std::to_string(cfg.max_order));
  }
  return substitute(g, b, bound).terms.empty();
}

Restriction restrict(const BivarPoly& f, const TangencyCurve& tc, const HalfBranch& b, const ExpansionConfig& cfg) {
  validate(cfg);
  Restriction r;
  r.component = b;
  int order = cfg.order;
  while (true) {
    r.component = extend(r.component, order);
    r.series = substitute(f, r.component, order);
    if (!r.series.terms.empty()) {
      const auto& [q, coeff] = *r.series.terms.begin();
      NumberField field = r.component.field;
      try {
        r.sign = field.sign(coeff, cfg.max_bits);
      } catch (const GermError& err) {
        if (err.kind() != ErrorKind::PrecisionExceeded) throw;
        throw GermError(ErrorKind::IndeterminateSign, err.what());
      }
      r.alpha = make_rational(q, r.component.norm_order);
      return r;
    }
    if (r.series.is_exact() || f.is_zero()) {
      r.sign = 0;
      return r;
    }
    if (!tc.degenerate && certify_zero_branch(f, tc.h_sf, r.component, cfg)) {
      r.sign = 0;
      return r;
    }
    if (order >= cfg.max_order) {
      throw GermError(ErrorKind::TruncationTooSmall,
                      "restriction vanishes to order " + std::to_string(order) + " without certification");
    }
    order = std::min(order * 2, cfg.max_order);
  }
}

Restriction restrict(const BivarPoly& f, const HalfBranch& b, const ExpansionConfig& cfg) {
  return restrict(f, tangency_poly(f), b, cfg);
}

}  // namespace germinv
