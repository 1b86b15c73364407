#include <germinv/invariant.hpp>

#include <germinv/errors.hpp>

#include <algorithm>
#include <stdexcept>

namespace germinv {

GermInvariant::GermInvariant(Rational a, Rational b) : lo_(std::move(a)), hi_(std::move(b)) {
  if (hi_ < lo_) std::swap(lo_, hi_);
}

std::string to_string(const GermInvariant& v) { return "(" + v.lo().get_str() + ", " + v.hi().get_str() + ")"; }

std::string_view verdict_name(Verdict v) { return v == Verdict::Possible ? "possible" : "excluded"; }

Classification classify(const std::vector<Restriction>& restrictions) {
  if (restrictions.empty()) throw std::invalid_argument("classify needs at least one component");
  Classification c;
  for (std::size_t k = 0; k < restrictions.size(); ++k) {
    const auto& r = restrictions[k];
    const int id = static_cast<int>(k);
    if (r.sign == 0) {
      c.K0.push_back(id);
    } else if (r.sign < 0) {
      c.Kminus.emplace_back(id, *r.alpha);
    } else {
      c.Kplus.emplace_back(id, *r.alpha);
    }
  }
  return c;
}

namespace {

Rational min_alpha(const std::vector<std::pair<int, Rational>>& ks) {
  return std::min_element(ks.begin(), ks.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
      ->second;
}

Rational max_alpha(const std::vector<std::pair<int, Rational>>& ks) {
  return std::max_element(ks.begin(), ks.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
      ->second;
}

}  // namespace

GermInvariant invariant(const Classification& c) {
  const bool has0 = !c.K0.empty();
  const bool hasm = !c.Kminus.empty();
  const bool hasp = !c.Kplus.empty();
  if (!hasm && !hasp) return {Rational(0), Rational(0)};
  if (hasm && hasp) return {-min_alpha(c.Kminus), min_alpha(c.Kplus)};
  if (has0) {
    if (hasp) return {Rational(0), min_alpha(c.Kplus)};
    return {-min_alpha(c.Kminus), Rational(0)};
  }
  if (hasp) return {min_alpha(c.Kplus), max_alpha(c.Kplus)};
  return {-min_alpha(c.Kminus), -max_alpha(c.Kminus)};
}

GermInvariant negate(const GermInvariant& v) { return {-v.hi(), -v.lo()}; }

Verdict equivalent_possible(const GermInvariant& vf, const GermInvariant& vg) {
  return (vf == vg || vf == negate(vg)) ? Verdict::Possible : Verdict::Excluded;
}

GermAnalysis analyze(const BivarPoly& f, const ExpansionConfig& cfg) {
  GermAnalysis a;
  a.f = f;
  a.tangency = tangency_poly(f);
  const auto comps = components(a.tangency, cfg);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    try {
      a.restrictions.push_back(restrict(f, a.tangency, comps[k], cfg));
    } catch (const GermError& err) {
      throw GermError(err.kind(), "component " + std::to_string(k) + " (" + std::string(chart_name(comps[k].chart)) +
                                      ", side " + std::to_string(comps[k].side) + "): " + err.detail());
    }
  }
  a.classification = classify(a.restrictions);
  a.inv = invariant(a.classification);
  return a;
}

}  // namespace germinv
