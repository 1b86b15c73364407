#include <germinv/puiseux.hpp>

#include <germinv/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace germinv {

std::string_view chart_name(Chart c) {
  switch (c) {
    case Chart::YAxis: return "y-axis";
    case Chart::XAxis: return "x-axis";
    case Chart::XDominant: return "x-dominant";
    case Chart::YDominant: return "y-dominant";
    case Chart::Radial: return "radial";
  }
  return "unknown";
}

std::optional<int> PuiseuxSeries::lowest() const {
  if (terms.empty()) return std::nullopt;
  return terms.begin()->first;
}

const PuiseuxSeries& HalfBranch::dominant() const {
  return (chart == Chart::YDominant || chart == Chart::YAxis) ? y : x;
}

const PuiseuxSeries& HalfBranch::other() const {
  return (chart == Chart::YDominant || chart == Chart::YAxis) ? x : y;
}

int HalfBranch::truncation() const {
  int t = std::numeric_limits<int>::max();
  if (x.truncation) t = std::min(t, *x.truncation);
  if (y.truncation) t = std::min(t, *y.truncation);
  return t;
}

using FieldBivar = std::map<Exponent, UniPoly>;

/// State of a chain once it can no longer fork: the remaining unknown Y has a
/// unique solution, found term by term.
struct LockedChain {
  Chart chart = Chart::XDominant;
  int side = 1;
  NumberField field;
  int ram = 1;
  int next = 0;
  std::map<int, UniPoly> known;
  FieldBivar poly;
};

namespace {

struct Vertex {
  int i, j;
};

struct Edge {
  Vertex from, to;  // from.i < to.i, from.j > to.j
  int p, q;         // growth exponent p/q in lowest terms
};

// Lower-left boundary of the support: from the point of least i down to the
// point of least j. Points at equal i keep only the least j.
std::vector<Edge> relevant_edges(const std::vector<Vertex>& support) {
  std::map<int, int> lowest_j;
  for (const auto& v : support) {
    auto [it, inserted] = lowest_j.emplace(v.i, v.j);
    if (!inserted) it->second = std::min(it->second, v.j);
  }
  std::vector<Vertex> pts;
  int jmin = std::numeric_limits<int>::max();
  for (const auto& [i, j] : lowest_j) {
    pts.push_back({i, j});
    jmin = std::min(jmin, j);
  }
  std::vector<Vertex> hull;
  for (const auto& v : pts) {
    while (hull.size() >= 2) {
      const Vertex& o = hull[hull.size() - 2];
      const Vertex& a = hull.back();
      const long cross = static_cast<long>(a.i - o.i) * (v.j - o.j) - static_cast<long>(a.j - o.j) * (v.i - o.i);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(v);
    if (v.j == jmin) break;
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const Vertex a = hull[k], b = hull[k + 1];
    const int num = b.i - a.i;
    const int den = a.j - b.j;
    const int g = std::gcd(num, den);
    edges.push_back({a, b, num / g, den / g});
  }
  return edges;
}

std::vector<Vertex> support_of(const FieldBivar& poly) {
  std::vector<Vertex> out;
  out.reserve(poly.size());
  for (const auto& [e, c] : poly) out.push_back({e.i, e.j});
  return out;
}

bool on_edge(const Edge& edge, int i, int j) {
  return (i - edge.from.i) * (edge.to.j - edge.from.j) == (j - edge.from.j) * (edge.to.i - edge.from.i) &&
         i >= edge.from.i && i <= edge.to.i;
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

struct ChainState {
  NumberField field;
  int ram = 1;
  int next = 0;
  std::map<int, UniPoly> known;
  FieldBivar poly;
};

void strip_zeros(NumberField& K, FieldBivar& poly) {
  for (auto it = poly.begin(); it != poly.end();) {
    if (K.is_zero(it->second)) {
      it = poly.erase(it);
    } else {
      it->second = K.reduce(it->second);
      ++it;
    }
  }
}

int min_j(const FieldBivar& poly) {
  int j = std::numeric_limits<int>::max();
  for (const auto& [e, c] : poly) j = std::min(j, e.j);
  return j;
}

FieldBivar divide_by_y(const FieldBivar& poly, int k) {
  FieldBivar out;
  for (const auto& [e, c] : poly) out.emplace(Exponent{e.i, e.j - k}, c);
  return out;
}

void ramify(ChainState& st, int q) {
  if (q == 1) return;
  FieldBivar poly;
  for (auto& [e, c] : st.poly) poly.emplace(Exponent{e.i * q, e.j}, std::move(c));
  st.poly = std::move(poly);
  std::map<int, UniPoly> known;
  for (auto& [k, c] : st.known) known.emplace(k * q, std::move(c));
  st.known = std::move(known);
  st.next *= q;
  st.ram *= q;
}

// Y -> s^p (c + Y), then divide out the largest power of s.
void substitute_step(ChainState& st, int p, const UniPoly& c) {
  NumberField& K = st.field;
  int max_j = 0;
  for (const auto& [e, v] : st.poly) max_j = std::max(max_j, e.j);
  std::vector<UniPoly> cpow{UniPoly::constant(Rational(1))};
  for (int k = 1; k <= max_j; ++k) cpow.push_back(K.mul(cpow.back(), c));
  FieldBivar out;
  for (const auto& [e, a] : st.poly) {
    const int si = e.i + p * e.j;
    for (int l = 0; l <= e.j; ++l) {
      UniPoly term = K.mul(a, cpow[static_cast<std::size_t>(e.j - l)]) * Rational(binomial(e.j, l));
      auto [it, inserted] = out.emplace(Exponent{si, l}, term);
      if (!inserted) it->second += term;
    }
  }
  strip_zeros(K, out);
  int v = std::numeric_limits<int>::max();
  for (const auto& [e, a] : out) v = std::min(v, e.i);
  FieldBivar shifted;
  for (auto& [e, a] : out) shifted.emplace(Exponent{e.i - v, e.j}, std::move(a));
  st.poly = std::move(shifted);
  st.next += p;
  st.known[st.next] = K.reduce(c);
}

void remap_field(ChainState& st, const FieldRoot& root) {
  const bool identity = root.embed == UniPoly({Rational(0), Rational(1)}) && root.field.modulus() == st.field.modulus();
  if (!identity) {
    for (auto& [e, c] : st.poly) c = embed_residue(c, root.embed, root.field);
    for (auto& [k, c] : st.known) c = embed_residue(c, root.embed, root.field);
  }
  st.field = root.field;
}

struct ChainResult {
  NumberField field;
  int ram;
  std::map<int, UniPoly> known;
  std::optional<int> truncation;
  std::shared_ptr<const LockedChain> continuation;
};

ChainResult run_locked(const LockedChain& lock, int order) {
  ChainState st{lock.field, lock.ram, lock.next, lock.known, lock.poly};
  bool truncated = false;
  while (true) {
    if (min_j(st.poly) >= 1) {
      if (truncated) return {st.field, st.ram, st.known, std::max(order, st.next), nullptr};
      return {st.field, st.ram, st.known, std::nullopt, nullptr};
    }
    int top_i = std::numeric_limits<int>::max(), bottom_i = std::numeric_limits<int>::max();
    for (const auto& [e, c] : st.poly) {
      top_i = std::min(top_i, e.i);
      if (e.j == 0) bottom_i = std::min(bottom_i, e.i);
    }
    const int p = bottom_i - top_i;
    if (st.next + p > order) {
      return {st.field, st.ram, st.known, truncated ? std::max(order, st.next) : st.next + p - 1, nullptr};
    }
    const UniPoly lin = st.poly.at(Exponent{top_i, 1});
    const UniPoly rhs = st.poly.at(Exponent{bottom_i, 0});
    const UniPoly c = st.field.reduce(-st.field.mul(rhs, st.field.inverse(lin)));
    substitute_step(st, p, c);
    // Y is O(s) and dY/dP ~ s^-top, so terms with i + j > top + remaining
    // cannot reach the coefficients still needed.
    int new_top = std::numeric_limits<int>::max();
    for (const auto& [e, v] : st.poly) new_top = std::min(new_top, e.i);
    const int keep = new_top + std::max(0, order - st.next) + 1;
    for (auto it = st.poly.begin(); it != st.poly.end();) {
      if (it->first.i + it->first.j > keep) {
        it = st.poly.erase(it);
        truncated = true;
      } else {
        ++it;
      }
    }
  }
}

class Expander {
 public:
  Expander(Chart chart, int side, int order, int max_bits)
      : chart_(chart), side_(side), order_(order), max_bits_(max_bits) {}

  std::vector<ChainResult> run(const BivarPoly& q) {
    ChainState st;
    for (const auto& [e, c] : q.terms()) st.poly.emplace(e, UniPoly::constant(c));
    process(std::move(st), true);
    return std::move(results_);
  }

 private:
  void process(ChainState st, bool first) {
    if (!first) {
      const int jm = min_j(st.poly);
      if (jm >= 1) {
        results_.push_back({st.field, st.ram, st.known, std::nullopt, nullptr});
        st.poly = divide_by_y(st.poly, jm);
      }
    }
    const auto edges = relevant_edges(support_of(st.poly));
    if (edges.empty()) return;
    const int height = edges.front().from.j - edges.back().to.j;
    if (!first && height == 1) {
      auto lock = std::make_shared<LockedChain>(LockedChain{chart_, side_, st.field, st.ram, st.next, st.known, st.poly});
      ChainResult r = run_locked(*lock, order_);
      r.continuation = std::move(lock);
      results_.push_back(std::move(r));
      return;
    }
    for (const auto& edge : edges) {
      // The first step decides the chart: x-dominant takes mu >= 1,
      // y-dominant takes mu > 1 so tangency to the diagonal is not doubled.
      if (first) {
        const bool ok = chart_ == Chart::XDominant ? edge.p >= edge.q : edge.p > edge.q;
        if (!ok) continue;
      }
      FieldPoly E(static_cast<std::size_t>(edge.from.j - edge.to.j + 1));
      for (const auto& [e, c] : st.poly) {
        if (on_edge(edge, e.i, e.j)) E[static_cast<std::size_t>(e.j - edge.to.j)] = c;
      }
      const auto roots = nonzero_real_roots(st.field, E, max_bits_);
      for (const auto& root : roots) {
        ChainState next = st;
        remap_field(next, root);
        ramify(next, edge.q);
        substitute_step(next, edge.p, root.root);
        process(std::move(next), false);
      }
    }
  }

  Chart chart_;
  int side_;
  int order_;
  int max_bits_;
  std::vector<ChainResult> results_;
};

PuiseuxSeries monomial_series(int e, int sign) {
  PuiseuxSeries s;
  s.ramification = e;
  s.terms.emplace(e, UniPoly::constant(Rational(sign)));
  return s;
}

HalfBranch make_branch(Chart chart, int side, ChainResult r) {
  HalfBranch b;
  b.chart = chart;
  b.side = side;
  b.e = r.ram;
  b.field = r.field;
  PuiseuxSeries dom = monomial_series(r.ram, side);
  PuiseuxSeries oth;
  oth.ramification = r.ram;
  for (auto& [k, c] : r.known) {
    UniPoly v = b.field.reduce(c);
    if (!v.is_zero()) oth.terms.emplace(k, std::move(v));
  }
  oth.truncation = r.truncation;
  if (chart == Chart::XDominant) {
    b.x = std::move(dom);
    b.y = std::move(oth);
  } else {
    b.y = std::move(dom);
    b.x = std::move(oth);
  }
  b.norm_order = r.ram;
  b.continuation = std::move(r.continuation);
  return b;
}

HalfBranch axis_branch(Chart chart, int side) {
  HalfBranch b;
  b.chart = chart;
  b.side = side;
  b.e = 1;
  b.norm_order = 1;
  PuiseuxSeries line = monomial_series(1, side);
  PuiseuxSeries zero;
  if (chart == Chart::YAxis) {
    b.y = line;
    b.x = zero;
  } else {
    b.x = line;
    b.y = zero;
  }
  return b;
}

}  // namespace

std::vector<NewtonPolygonEdge> newton_polygon(const BivarPoly& p) {
  if (p.is_zero()) throw GermError(ErrorKind::ZeroInput, "Newton polygon of the zero polynomial");
  if (p.constant_term() != 0) throw GermError(ErrorKind::UnitGerm, "polynomial does not vanish at the origin");
  std::vector<Vertex> support;
  for (const auto& [e, c] : p.terms()) support.push_back({e.i, e.j});
  std::vector<NewtonPolygonEdge> out;
  for (const auto& edge : relevant_edges(support)) {
    NewtonPolygonEdge ne;
    ne.slope = -make_rational(edge.p, edge.q);
    std::vector<Rational> cs(static_cast<std::size_t>(edge.from.j - edge.to.j + 1));
    for (const auto& [e, c] : p.terms()) {
      if (on_edge(edge, e.i, e.j)) {
        cs[static_cast<std::size_t>(e.j - edge.to.j)] = c;
        ne.support.push_back(e);
      }
    }
    ne.edge_poly = UniPoly(std::move(cs));
    out.push_back(std::move(ne));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.slope < b.slope; });
  return out;
}

std::vector<HalfBranch> expand_branches(const BivarPoly& p, int order, int max_bits) {
  if (p.is_zero()) throw GermError(ErrorKind::ZeroInput, "branches of the zero polynomial");
  if (p.constant_term() != 0) throw GermError(ErrorKind::UnitGerm, "curve does not pass through the origin");
  BivarPoly rest = squarefree_part(p);
  std::vector<HalfBranch> out;
  if (auto q = divide_exact(rest, BivarPoly::x())) {
    out.push_back(axis_branch(Chart::YAxis, 1));
    out.push_back(axis_branch(Chart::YAxis, -1));
    rest = *q;
  }
  if (auto q = divide_exact(rest, BivarPoly::y())) {
    out.push_back(axis_branch(Chart::XAxis, 1));
    out.push_back(axis_branch(Chart::XAxis, -1));
    rest = *q;
  }
  if (rest.constant_term() == 0 && !rest.is_zero()) {
    for (Chart chart : {Chart::XDominant, Chart::YDominant}) {
      const BivarPoly base = chart == Chart::XDominant ? rest : rest.swapped();
      for (int side : {1, -1}) {
        BivarPoly::TermMap flipped;
        for (const auto& [e, c] : base.terms()) flipped.emplace(e, (side < 0 && e.i % 2 != 0) ? Rational(-c) : c);
        Expander ex(chart, side, order, max_bits);
        for (auto& r : ex.run(BivarPoly(std::move(flipped)))) out.push_back(make_branch(chart, side, std::move(r)));
      }
    }
  }

  // Deterministic order: chart, then growth exponent of the other coordinate,
  // then side, then leading coefficient.
  auto key = [](const HalfBranch& b) {
    const auto& o = b.other();
    Rational growth = o.terms.empty() ? Rational(1000000) : make_rational(o.terms.begin()->first, b.e);
    const double lead = o.terms.empty() ? 0.0 : b.field.approx(o.terms.begin()->second);
    return std::make_tuple(static_cast<int>(b.chart), growth, -b.side, lead);
  };
  std::stable_sort(out.begin(), out.end(), [&](const HalfBranch& a, const HalfBranch& b) { return key(a) < key(b); });
  return out;
}

HalfBranch extend(const HalfBranch& b, int order) {
  if (b.is_exact() || !b.continuation || b.truncation() >= order) return b;
  ChainResult r = run_locked(*b.continuation, order);
  r.continuation = b.continuation;
  return make_branch(b.chart, b.side, std::move(r));
}

namespace {

using Series = std::map<int, UniPoly>;

Series series_mul(NumberField& K, const Series& a, const Series& b, std::optional<int> limit) {
  Series out;
  for (const auto& [i, ca] : a) {
    for (const auto& [j, cb] : b) {
      if (limit && i + j > *limit) break;
      out[i + j] += K.mul(ca, cb);
    }
  }
  for (auto& [k, c] : out) c = K.reduce(c);
  return out;
}

}  // namespace

PuiseuxSeries substitute(const BivarPoly& f, const HalfBranch& b, int order) {
  const HalfBranch bb = extend(b, order);
  NumberField K = bb.field;
  std::optional<int> limit;
  if (!bb.is_exact()) limit = bb.truncation();

  const int dx = std::max(0, f.degree_in(Var::X));
  const int dy = std::max(0, f.degree_in(Var::Y));
  std::vector<Series> xp{Series{{0, UniPoly::constant(Rational(1))}}};
  std::vector<Series> yp{Series{{0, UniPoly::constant(Rational(1))}}};
  for (int k = 1; k <= dx; ++k) xp.push_back(series_mul(K, xp.back(), bb.x.terms, limit));
  for (int k = 1; k <= dy; ++k) yp.push_back(series_mul(K, yp.back(), bb.y.terms, limit));

  Series acc;
  for (const auto& [e, c] : f.terms()) {
    Series t = series_mul(K, xp[static_cast<std::size_t>(e.i)], yp[static_cast<std::size_t>(e.j)], limit);
    for (auto& [k, v] : t) acc[k] += v * c;
  }
  PuiseuxSeries out;
  out.ramification = bb.e;
  out.truncation = limit;
  for (auto& [k, v] : acc) {
    if (!K.is_zero(v)) out.terms.emplace(k, K.reduce(v));
  }
  return out;
}

std::pair<double, double> branch_point(const HalfBranch& b, double s) {
  auto eval = [&](const PuiseuxSeries& ser) {
    double acc = 0.0;
    for (const auto& [k, c] : ser.terms) acc += b.field.approx(c) * std::pow(s, k);
    return acc;
  };
  return {eval(b.x), eval(b.y)};
}

}  // namespace germinv
