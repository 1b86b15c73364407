#include <germinv/roots.hpp>

#include <germinv/errors.hpp>

#include <algorithm>

namespace germinv {

AlgebraicReal::AlgebraicReal(const Rational& r)
    : defining_(UniPoly::linear_root(r)), lo_(r), hi_(r), sign_lo_(0) {}

AlgebraicReal::AlgebraicReal(UniPoly defining, Rational lo, Rational hi)
    : defining_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ == hi_) {
    defining_ = UniPoly::linear_root(lo_);
    sign_lo_ = 0;
  } else {
    sign_lo_ = defining_.sign_at(lo_);
  }
}

bool AlgebraicReal::refine() {
  if (is_rational()) return false;
  Rational mid = (lo_ + hi_) / 2;
  const int s = defining_.sign_at(mid);
  if (s == 0) {
    lo_ = hi_ = mid;
    defining_ = UniPoly::linear_root(mid);
    sign_lo_ = 0;
  } else if (s == sign_lo_) {
    lo_ = std::move(mid);
  } else {
    hi_ = std::move(mid);
  }
  return true;
}

void AlgebraicReal::refine_to(const Rational& bound) {
  while (width() > bound && refine()) {
  }
}

double AlgebraicReal::approx() const {
  AlgebraicReal tmp = *this;
  tmp.refine_to(pow2(-60) * (1 + abs(lo_)));
  return Rational((tmp.lo_ + tmp.hi_) / 2).get_d();
}

void AlgebraicReal::restrict_defining(UniPoly factor) {
  if (is_rational()) return;
  defining_ = std::move(factor);
  if (defining_.degree() == 1) {
    const Rational r = -defining_.coeff(0) / defining_.coeff(1);
    lo_ = hi_ = r;
    defining_ = UniPoly::linear_root(r);
    sign_lo_ = 0;
    return;
  }
  sign_lo_ = defining_.sign_at(lo_);
}

int sign_of(AlgebraicReal a, int max_bits) {
  if (a.is_rational()) return sign(a.lo());
  const Rational stop = a.width() * pow2(-max_bits);
  while (true) {
    if (a.lo() > 0) return 1;
    if (a.hi() < 0) return -1;
    if (a.is_rational()) return sign(a.lo());
    // 0 lies in the isolating interval: it is the root iff it is a root at all.
    if (a.defining().coeff(0) == 0) return 0;
    if (a.width() <= stop) {
      throw GermError(ErrorKind::PrecisionExceeded,
                      "sign of algebraic number undecided after " + std::to_string(max_bits) + " bits");
    }
    a.refine();
  }
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UniPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern of -r.
    UniPoly next = r.primitive();
    if (sign(next.lead()) == sign(r.lead())) next = -next;
    seq.push_back(std::move(next));
  }
  return seq;
}

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

int variations_at(const std::vector<UniPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(p.sign_at(x));
  return variations(signs);
}

}  // namespace

int sturm_count(const std::vector<UniPoly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty()) return 0;
  return variations_at(seq, a) - variations_at(seq, b);
}

int sturm_total(const std::vector<UniPoly>& seq) {
  if (seq.empty()) return 0;
  std::vector<int> neg, pos;
  for (const auto& p : seq) {
    const int s = sign(p.lead());
    pos.push_back(s);
    neg.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return variations(neg) - variations(pos);
}

Rational root_bound(const UniPoly& p) {
  Rational m(0);
  const Rational lead = abs(p.lead());
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k)) / lead));
  return m + 1;
}

std::vector<AlgebraicReal> isolate_real_roots(const UniPoly& u) {
  if (u.is_zero()) throw GermError(ErrorKind::ZeroInput, "isolate_real_roots of the zero polynomial");
  const UniPoly p = squarefree(u);
  if (p.degree() < 1) return {};
  const auto seq = sturm_sequence(p);
  const Rational bound = root_bound(p);

  struct Cell {
    Rational a, b;
    int n;
    bool a_is_root;
  };
  std::vector<Cell> stack{{-bound, bound, sturm_count(seq, -bound, bound), false}};
  std::vector<std::pair<Rational, Rational>> found;

  while (!stack.empty()) {
    Cell c = std::move(stack.back());
    stack.pop_back();
    if (c.n == 0) continue;
    if (c.n == 1) {
      if (p.sign_at(c.b) == 0) {
        found.emplace_back(c.b, c.b);
        continue;
      }
      Rational a = c.a, b = c.b;
      bool a_root = c.a_is_root;
      bool exact = false;
      while (a_root) {
        Rational m = (a + b) / 2;
        if (sturm_count(seq, m, b) == 1) {
          a = m;
          a_root = false;
        } else {
          b = m;
          if (p.sign_at(m) == 0) {
            found.emplace_back(m, m);
            exact = true;
            break;
          }
        }
      }
      if (!exact) found.emplace_back(a, b);
      continue;
    }
    Rational mid = (c.a + c.b) / 2;
    const bool mid_root = p.sign_at(mid) == 0;
    const int left = sturm_count(seq, c.a, mid);
    stack.push_back({mid, c.b, c.n - left, mid_root});
    stack.push_back({c.a, mid, left, c.a_is_root});
  }

  // Pin rational roots exactly: a root r = num/den has den | lead of the
  // primitive integer form, so r * lead is an integer.
  const UniPoly prim = p.primitive();
  const Integer lead = abs(prim.lead().get_num());
  UniPoly irrational_part = prim;
  std::vector<std::pair<Rational, Rational>> pinned;
  for (auto& [lo, hi] : found) {
    if (lo == hi) {
      pinned.emplace_back(lo, hi);
      irrational_part = exact_div(irrational_part, UniPoly::linear_root(lo));
      continue;
    }
    AlgebraicReal a(p, lo, hi);
    a.refine_to(Rational(1) / Rational(lead) / 2);
    if (a.is_rational()) {
      pinned.emplace_back(a.lo(), a.lo());
      irrational_part = exact_div(irrational_part, UniPoly::linear_root(a.lo()));
      continue;
    }
    Rational scaled_lo = a.lo() * Rational(lead);
    Rational scaled_hi = a.hi() * Rational(lead);
    Integer k_lo, k_hi;
    mpz_cdiv_q(k_lo.get_mpz_t(), scaled_lo.get_num_mpz_t(), scaled_lo.get_den_mpz_t());
    mpz_fdiv_q(k_hi.get_mpz_t(), scaled_hi.get_num_mpz_t(), scaled_hi.get_den_mpz_t());
    bool hit = false;
    for (Integer k = k_lo; k <= k_hi; ++k) {
      Rational cand = make_rational(k, lead);
      if (p.sign_at(cand) == 0) {
        pinned.emplace_back(cand, cand);
        irrational_part = exact_div(irrational_part, UniPoly::linear_root(cand));
        hit = true;
        break;
      }
    }
    if (!hit) pinned.emplace_back(a.lo(), a.hi());
  }

  std::vector<AlgebraicReal> roots;
  roots.reserve(pinned.size());
  irrational_part = irrational_part.monic();
  for (auto& [lo, hi] : pinned) {
    if (lo == hi) {
      roots.emplace_back(lo);
    } else {
      roots.emplace_back(irrational_part, lo, hi);
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const AlgebraicReal& x, const AlgebraicReal& y) { return x.lo() < y.lo(); });
  return roots;
}

}  // namespace germinv
