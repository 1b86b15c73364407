#include <germinv/number_field.hpp>

#include <germinv/errors.hpp>

#include <optional>

namespace germinv {

NumberField::NumberField(AlgebraicReal generator) : gen_(std::move(generator)) {
  if (!gen_.is_rational()) gen_.restrict_defining(gen_.defining().monic());
}

UniPoly NumberField::reduce(const UniPoly& r) const {
  if (is_rational()) return r.is_zero() ? UniPoly{} : UniPoly::constant(r(gen_.lo()));
  if (r.degree() < degree()) return r;
  return r % modulus();
}

UniPoly NumberField::pow(const UniPoly& a, int k) const {
  UniPoly result = UniPoly::constant(Rational(1));
  UniPoly base = reduce(a);
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

Rational NumberField::as_rational(const UniPoly& r) const {
  const UniPoly v = reduce(r);
  return v.is_zero() ? Rational(0) : v.coeff(0);
}

bool NumberField::is_zero(const UniPoly& r) {
  const UniPoly v = reduce(r);
  if (v.is_zero()) return true;
  if (is_rational() || v.degree() == 0) return false;
  const UniPoly g = gcd(modulus(), v);
  if (g.degree() == 0) return false;
  const bool vanishes = g.sign_at(gen_.lo()) * g.sign_at(gen_.hi()) < 0;
  if (vanishes) {
    gen_.restrict_defining(g);
  } else {
    gen_.restrict_defining(exact_div(modulus(), g).monic());
  }
  return vanishes;
}

UniPoly NumberField::inverse(const UniPoly& r) {
  if (is_zero(r)) throw std::domain_error("inverse of zero in number field");
  const UniPoly v = reduce(r);
  if (is_rational()) return UniPoly::constant(1 / v.coeff(0));
  auto [g, s] = gcd_cofactor(v, modulus());
  if (g.degree() != 0) throw std::logic_error("residue not coprime to modulus after zero test");
  return s;
}

int NumberField::sign(const UniPoly& r, int max_bits) {
  if (is_zero(r)) return 0;
  const UniPoly v = reduce(r);
  if (is_rational() || v.degree() == 0) return germinv::sign(as_rational(v));
  for (int step = 0; step <= max_bits; ++step) {
    auto [lo, hi] = eval_interval(v, gen_.lo(), gen_.hi());
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (!gen_.refine()) return germinv::sign(v(gen_.lo()));
  }
  throw GermError(ErrorKind::PrecisionExceeded,
                  "sign of field element undecided after " + std::to_string(max_bits) + " bits");
}

double NumberField::approx(const UniPoly& r) const {
  const UniPoly v = reduce(r);
  if (v.is_zero()) return 0.0;
  if (v.degree() == 0) return v.coeff(0).get_d();
  return v.eval(gen_.approx());
}

UniPoly embed_residue(const UniPoly& r, const UniPoly& embed, const NumberField& target) {
  if (r.degree() <= 0) return target.reduce(r);
  UniPoly acc;
  for (auto it = r.coeffs().rbegin(); it != r.coeffs().rend(); ++it) {
    acc = target.mul(acc, embed);
    acc += UniPoly::constant(*it);
  }
  return target.reduce(acc);
}

UniPoly interpolate_at_integers(const std::vector<Rational>& values) {
  // Newton divided differences at nodes 0, 1, ..., n-1.
  const std::size_t n = values.size();
  std::vector<Rational> dd = values;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t k = n - 1; k >= level; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / static_cast<long>(level);
      if (k == level) break;
    }
  }
  UniPoly acc;
  for (std::size_t k = n; k-- > 0;) {
    acc *= UniPoly({Rational(-static_cast<long>(k)), Rational(1)});
    acc += UniPoly::constant(dd[k]);
  }
  return acc;
}

namespace {

void fp_trim(NumberField& K, FieldPoly& p) {
  while (!p.empty() && K.is_zero(p.back())) p.pop_back();
  for (auto& c : p) c = K.reduce(c);
}

int fp_deg(const FieldPoly& p) { return static_cast<int>(p.size()) - 1; }

FieldPoly fp_derivative(const NumberField& K, const FieldPoly& p) {
  FieldPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(K.reduce(p[k] * Rational(static_cast<long>(k))));
  return d;
}

FieldPoly fp_monic(NumberField& K, FieldPoly p) {
  fp_trim(K, p);
  if (p.empty()) return p;
  const UniPoly inv = K.inverse(p.back());
  for (auto& c : p) c = K.mul(c, inv);
  return p;
}

std::pair<FieldPoly, FieldPoly> fp_divmod(NumberField& K, FieldPoly a, FieldPoly b) {
  fp_trim(K, a);
  b = fp_monic(K, std::move(b));
  if (b.empty()) throw std::domain_error("field polynomial division by zero");
  FieldPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && fp_deg(a) >= fp_deg(b)) {
    const UniPoly lead = a.back();
    const int shift = fp_deg(a) - fp_deg(b);
    q[static_cast<std::size_t>(shift)] = lead;
    for (int k = 0; k <= fp_deg(b); ++k) {
      auto& slot = a[static_cast<std::size_t>(k + shift)];
      slot = K.reduce(slot - K.mul(lead, b[static_cast<std::size_t>(k)]));
    }
    a.pop_back();
    fp_trim(K, a);
  }
  return {q, a};
}

FieldPoly fp_gcd(NumberField& K, FieldPoly a, FieldPoly b) {
  fp_trim(K, a);
  fp_trim(K, b);
  while (!b.empty()) {
    FieldPoly r = fp_divmod(K, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(K, std::move(a));
}

FieldPoly fp_mul(const NumberField& K, const FieldPoly& a, const FieldPoly& b) {
  if (a.empty() || b.empty()) return {};
  FieldPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c = K.reduce(c);
  return r;
}

UniPoly fp_eval(const NumberField& K, const FieldPoly& p, const UniPoly& x) {
  UniPoly acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = K.reduce(K.mul(acc, x) + *it);
  return acc;
}

// Res_t(m(t), P(node, t)) as a polynomial in the node variable, via
// interpolation. m must be monic; `at(node)` returns P(node, t).
template <class EvalAt>
UniPoly resultant_in_parameter(const UniPoly& m, int degree_bound, EvalAt at) {
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(degree_bound) + 1);
  for (int k = 0; k <= degree_bound; ++k) values.push_back(resultant(m, at(Rational(k))));
  return interpolate_at_integers(values);
}

struct Primitive {
  NumberField field;
  UniPoly alpha;
  UniPoly beta;
};

// Q(alpha, beta) = Q(gamma) with gamma = beta + k*alpha.
Primitive primitive_element(const NumberField& K, const AlgebraicReal& beta, int max_bits) {
  const UniPoly& m = K.modulus();
  const UniPoly nb = beta.defining().monic();
  const int d = m.degree();
  for (int k = 1; k <= 32; ++k) {
    const UniPoly R = resultant_in_parameter(m, d * nb.degree(), [&](const Rational& z) {
      return nb.compose(UniPoly({z, Rational(-k)}));
    });
    const UniPoly Rsf = squarefree(R);
    const auto seq = sturm_sequence(Rsf);
    AlgebraicReal a = K.generator(), b = beta;
    std::optional<AlgebraicReal> gamma;
    for (int step = 0; step < 4 * max_bits && !gamma; ++step) {
      const Rational lo = b.lo() + k * a.lo();
      const Rational hi = b.hi() + k * a.hi();
      const bool lo_root = Rsf.sign_at(lo) == 0;
      const bool hi_root = Rsf.sign_at(hi) == 0;
      const int count = sturm_count(seq, lo, hi) + (lo_root ? 1 : 0);
      if (count == 1 && !lo_root && !hi_root) {
        gamma = AlgebraicReal(Rsf, lo, hi);
      } else {
        a.refine();
        b.refine();
      }
    }
    if (!gamma) {
      throw GermError(ErrorKind::PrecisionExceeded, "could not isolate primitive element");
    }
    NumberField L(*gamma);
    const UniPoly g_res = UniPoly({Rational(0), Rational(1)});
    // nb(gamma - k t) as a polynomial in t over L.
    const FieldPoly lin{g_res, UniPoly::constant(Rational(-k))};
    FieldPoly acc;
    FieldPoly power{UniPoly::constant(Rational(1))};
    for (int i = 0; i <= nb.degree(); ++i) {
      if (nb.coeff(i) != 0) {
        if (acc.size() < power.size()) acc.resize(power.size());
        for (std::size_t j = 0; j < power.size(); ++j) acc[j] = L.reduce(acc[j] + power[j] * nb.coeff(i));
      }
      power = fp_mul(L, power, lin);
    }
    FieldPoly mpoly;
    for (const auto& c : m.coeffs()) mpoly.push_back(UniPoly::constant(c));
    FieldPoly g = fp_gcd(L, mpoly, acc);
    if (fp_deg(g) != 1) continue;
    const UniPoly alpha = L.reduce(-g[0]);
    const UniPoly beta_res = L.reduce(g_res - alpha * Rational(k));
    return {L, alpha, beta_res};
  }
  throw GermError(ErrorKind::PrecisionExceeded, "no separating primitive element found");
}

}  // namespace

std::vector<FieldRoot> nonzero_real_roots(NumberField& K, FieldPoly E, int max_bits) {
  fp_trim(K, E);
  std::vector<FieldRoot> out;
  if (fp_deg(E) < 1) return out;
  const UniPoly identity = UniPoly({Rational(0), Rational(1)});

  if (K.is_rational()) {
    std::vector<Rational> cs;
    for (const auto& c : E) cs.push_back(K.as_rational(c));
    const UniPoly u(cs);
    const UniPoly base = UniPoly::constant(K.generator().lo());
    for (auto& r : isolate_real_roots(u)) {
      if (r.is_rational()) {
        if (r.lo() == 0) continue;
        out.push_back({K, base, UniPoly::constant(r.lo())});
      } else {
        out.push_back({NumberField(r), base, identity});
      }
    }
    return out;
  }

  FieldPoly dE = fp_derivative(K, E);
  FieldPoly g = fp_gcd(K, E, dE);
  FieldPoly Esf = fp_deg(g) > 0 ? fp_divmod(K, E, g).first : E;
  Esf = fp_monic(K, std::move(Esf));
  if (K.is_rational()) return nonzero_real_roots(K, Esf, max_bits);

  if (fp_deg(Esf) == 1) {
    const UniPoly root = K.reduce(-Esf[0]);
    if (!K.is_zero(root)) out.push_back({K, identity, root});
    return out;
  }

  // Real roots of E at the chosen conjugate are among the real roots of the norm.
  const UniPoly& m = K.modulus();
  const int n = fp_deg(Esf);
  const UniPoly norm = resultant_in_parameter(m, K.degree() * n, [&](const Rational& c) {
    UniPoly acc;
    Rational power(1);
    for (const auto& coeff : Esf) {
      acc += coeff * power;
      power *= c;
    }
    return acc;
  });
  for (auto& beta : isolate_real_roots(norm)) {
    if (beta.is_rational()) {
      if (beta.lo() == 0) continue;
      const UniPoly val = fp_eval(K, Esf, UniPoly::constant(beta.lo()));
      if (K.is_zero(val)) out.push_back({K, identity, UniPoly::constant(beta.lo())});
      continue;
    }
    if (K.is_rational()) {
      // K collapsed during zero tests; E is now over Q.
      return nonzero_real_roots(K, Esf, max_bits);
    }
    Primitive pe = primitive_element(K, beta, max_bits);
    FieldPoly mapped;
    for (const auto& c : Esf) mapped.push_back(embed_residue(c, pe.alpha, pe.field));
    const UniPoly val = fp_eval(pe.field, mapped, pe.beta);
    if (pe.field.is_zero(val)) out.push_back({pe.field, pe.alpha, pe.field.reduce(pe.beta)});
  }
  return out;
}

}  // namespace germinv
