#include <germinv/bivar_poly.hpp>

#include <germinv/errors.hpp>

#include <algorithm>
#include <cmath>

namespace germinv {

BivarPoly::BivarPoly(TermMap terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

BivarPoly BivarPoly::constant(const Rational& c) { return monomial(c, 0, 0); }

BivarPoly BivarPoly::monomial(const Rational& c, int i, int j) {
  BivarPoly p;
  if (c != 0) p.terms_.emplace(Exponent{i, j}, c);
  return p;
}

bool BivarPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

Rational BivarPoly::coeff(int i, int j) const {
  auto it = terms_.find(Exponent{i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BivarPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.total());
  return d;
}

int BivarPoly::degree_in(Var v) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, v == Var::X ? e.i : e.j);
  return d;
}

int BivarPoly::order() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.total();
  for (const auto& [e, c] : terms_) d = std::min(d, e.total());
  return d;
}

Rational BivarPoly::operator()(const Rational& x, const Rational& y) const {
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    acc += c * rpow(x, static_cast<unsigned long>(e.i)) * rpow(y, static_cast<unsigned long>(e.j));
  }
  return acc;
}

double BivarPoly::eval(double x, double y) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c.get_d() * std::pow(x, e.i) * std::pow(y, e.j);
  return acc;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly::TermMap out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out[Exponent{ea.i + eb.i, ea.j + eb.j}] += ca * cb;
  }
  return BivarPoly(std::move(out));
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& o) {
  *this = *this * o;
  return *this;
}

BivarPoly& BivarPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

BivarPoly BivarPoly::pow(int k) const {
  BivarPoly result = constant(Rational(1));
  BivarPoly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

BivarPoly BivarPoly::compose(const BivarPoly& X, const BivarPoly& Y) const {
  std::vector<BivarPoly> xpow{constant(Rational(1))}, ypow{constant(Rational(1))};
  const int dx = std::max(0, degree_in(Var::X));
  const int dy = std::max(0, degree_in(Var::Y));
  for (int k = 1; k <= dx; ++k) xpow.push_back(xpow.back() * X);
  for (int k = 1; k <= dy; ++k) ypow.push_back(ypow.back() * Y);
  BivarPoly out;
  for (const auto& [e, c] : terms_) out += xpow[static_cast<std::size_t>(e.i)] * ypow[static_cast<std::size_t>(e.j)] * c;
  return out;
}

BivarPoly BivarPoly::swapped() const {
  TermMap out;
  for (const auto& [e, c] : terms_) out.emplace(Exponent{e.j, e.i}, c);
  return BivarPoly(std::move(out));
}

bool grlex_less(const Exponent& a, const Exponent& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  return a.i < b.i;
}

std::pair<Exponent, Rational> BivarPoly::grlex_lead() const {
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (grlex_less(best->first, it->first)) best = it;
  }
  return *best;
}

BivarPoly BivarPoly::normalized() const {
  if (terms_.empty()) return {};
  Integer den_lcm(1), content(0);
  for (const auto& [e, c] : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [e, c] : terms_) {
    Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Rational scale = make_rational(den_lcm, content);
  if (grlex_lead().second < 0) scale = -scale;
  BivarPoly out = *this;
  out *= scale;
  return out;
}

std::vector<UniPoly> BivarPoly::as_poly_in_y() const {
  const int dy = degree_in(Var::Y);
  std::vector<std::vector<Rational>> dense(static_cast<std::size_t>(dy + 1));
  for (const auto& [e, c] : terms_) {
    auto& row = dense[static_cast<std::size_t>(e.j)];
    if (row.size() <= static_cast<std::size_t>(e.i)) row.resize(static_cast<std::size_t>(e.i) + 1);
    row[static_cast<std::size_t>(e.i)] = c;
  }
  std::vector<UniPoly> out;
  out.reserve(dense.size());
  for (auto& row : dense) out.emplace_back(std::move(row));
  return out;
}

BivarPoly BivarPoly::from_poly_in_y(const std::vector<UniPoly>& cs) {
  TermMap out;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const auto& c = cs[j].coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) out.emplace(Exponent{static_cast<int>(i), static_cast<int>(j)}, c[i]);
    }
  }
  return BivarPoly(std::move(out));
}

UniPoly BivarPoly::as_univariate_x() const {
  auto cs = as_poly_in_y();
  return cs.empty() ? UniPoly{} : cs.front();
}

double BivarPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c.get_d());
  return s;
}

BivarPoly diff(const BivarPoly& p, Var v) {
  BivarPoly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    const int k = v == Var::X ? e.i : e.j;
    if (k == 0) continue;
    Exponent d = v == Var::X ? Exponent{e.i - 1, e.j} : Exponent{e.i, e.j - 1};
    out.emplace(d, c * k);
  }
  return BivarPoly(std::move(out));
}

namespace {

// Polynomials in y with coefficients in Q[x], index = y-degree, trimmed.
using PolyY = std::vector<UniPoly>;

void trim(PolyY& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const PolyY& p) { return static_cast<int>(p.size()) - 1; }

UniPoly content(const PolyY& p) {
  UniPoly g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

PolyY div_scalar(const PolyY& p, const UniPoly& s) {
  PolyY out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(exact_div(c, s));
  return out;
}

PolyY mul_scalar(const PolyY& p, const UniPoly& s) {
  PolyY out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c * s);
  trim(out);
  return out;
}

// lc(B)^(deg A - deg B + 1) * A mod B, computed without fractions in x.
PolyY pseudo_remainder(PolyY a, const PolyY& b) {
  const int db = deg(b);
  const int delta = deg(a) - db;
  const UniPoly& lb = b.back();
  int steps = 0;
  while (!a.empty() && deg(a) >= db) {
    const UniPoly la = a.back();
    const int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= la * b[static_cast<std::size_t>(k)];
    trim(a);
    ++steps;
  }
  UniPoly fix = UniPoly::constant(Rational(1));
  for (int k = steps; k < delta + 1; ++k) fix *= lb;
  return mul_scalar(a, fix);
}

UniPoly upow(const UniPoly& p, int k) {
  UniPoly r = UniPoly::constant(Rational(1));
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

std::optional<BivarPoly> divide_exact(const BivarPoly& a, const BivarPoly& b) {
  if (b.is_zero()) throw GermError(ErrorKind::ZeroInput, "division by the zero polynomial");
  PolyY r = a.as_poly_in_y();
  const PolyY d = b.as_poly_in_y();
  trim(r);
  PolyY q(r.size() >= d.size() ? r.size() - d.size() + 1 : 0);
  while (!r.empty() && deg(r) >= deg(d)) {
    auto [qc, rem] = divmod(r.back(), d.back());
    if (!rem.is_zero()) return std::nullopt;
    const int shift = deg(r) - deg(d);
    q[static_cast<std::size_t>(shift)] = qc;
    for (int k = 0; k <= deg(d); ++k) r[static_cast<std::size_t>(k + shift)] -= qc * d[static_cast<std::size_t>(k)];
    trim(r);
  }
  if (!r.empty()) return std::nullopt;
  return BivarPoly::from_poly_in_y(q);
}

BivarPoly gcd_bivar(const BivarPoly& p, const BivarPoly& q) {
  if (p.is_zero() && q.is_zero()) throw GermError(ErrorKind::BothZero, "gcd of two zero polynomials");
  if (p.is_zero()) return q.normalized();
  if (q.is_zero()) return p.normalized();

  PolyY A = p.as_poly_in_y(), B = q.as_poly_in_y();
  if (deg(A) < deg(B)) std::swap(A, B);
  const UniPoly ca = content(A), cb = content(B);
  const UniPoly d = gcd(ca, cb);
  A = div_scalar(A, ca);
  B = div_scalar(B, cb);

  // Subresultant PRS over the integral domain Q[x].
  UniPoly g = UniPoly::constant(Rational(1)), h = UniPoly::constant(Rational(1));
  while (true) {
    const int delta = deg(A) - deg(B);
    PolyY R = pseudo_remainder(A, B);
    if (R.empty()) break;
    if (deg(R) == 0) {
      B = PolyY{UniPoly::constant(Rational(1))};
      break;
    }
    A = std::move(B);
    B = div_scalar(R, g * upow(h, delta));
    g = A.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(upow(g, delta), upow(h, delta - 1));
    }
  }
  const UniPoly cB = content(B);
  PolyY G = mul_scalar(div_scalar(B, cB), d);
  return BivarPoly::from_poly_in_y(G).normalized();
}

BivarPoly squarefree_part(const BivarPoly& p) {
  if (p.is_zero()) throw GermError(ErrorKind::ZeroInput, "square-free part of the zero polynomial");
  if (p.is_constant()) return BivarPoly::constant(Rational(1));
  PolyY P = p.as_poly_in_y();
  const UniPoly c = content(P);
  const BivarPoly prim = BivarPoly::from_poly_in_y(div_scalar(P, c));
  BivarPoly result = BivarPoly::from_poly_in_y(PolyY{squarefree(c)});
  if (prim.degree_in(Var::Y) > 0) {
    const BivarPoly g = gcd_bivar(prim, diff(prim, Var::Y));
    result *= *divide_exact(prim, g);
  }
  return result.normalized();
}

}  // namespace germinv
