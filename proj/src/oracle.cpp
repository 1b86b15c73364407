#include <germinv/oracle.hpp>

#include <germinv/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace germinv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double wrap_angle(double th) {
  double w = std::fmod(th, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

}  // namespace

DoublePoly::DoublePoly(const BivarPoly& p) {
  for (const auto& [e, c] : p.terms()) {
    terms_.push_back({e.i, e.j, to_double(c)});
    max_i_ = std::max(max_i_, e.i);
    max_j_ = std::max(max_j_, e.j);
  }
}

double DoublePoly::operator()(double x, double y) const {
  if (terms_.empty()) return 0.0;
  // Power tables; degrees are small.
  double xp[64], yp[64];
  std::vector<double> xbig, ybig;
  double* xs = xp;
  double* ys = yp;
  if (max_i_ >= 64) {
    xbig.resize(max_i_ + 1);
    xs = xbig.data();
  }
  if (max_j_ >= 64) {
    ybig.resize(max_j_ + 1);
    ys = ybig.data();
  }
  xs[0] = ys[0] = 1.0;
  for (int k = 1; k <= max_i_; ++k) xs[k] = xs[k - 1] * x;
  for (int k = 1; k <= max_j_; ++k) ys[k] = ys[k - 1] * y;
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.c * xs[t.i] * ys[t.j];
  return acc;
}

BivarPoly angular_derivative(const BivarPoly& p) {
  return BivarPoly::x() * diff(p, Var::Y) - BivarPoly::y() * diff(p, Var::X);
}

void validate(const OracleConfig& cfg) {
  if (!(cfg.t_min > 0 && cfg.t_min < cfg.t_max)) throw std::invalid_argument("ladder requires 0 < tmin < tmax");
  if (cfg.ladder_count < 8) throw std::invalid_argument("ladder requires at least 8 radii");
  if (cfg.grid < 64) throw std::invalid_argument("grid must be at least 64");
  if (!(cfg.tol > 0)) throw std::invalid_argument("tol must be positive");
  if (!(cfg.floor >= 0)) throw std::invalid_argument("floor must be non-negative");
  if (cfg.split_depth < 0) throw std::invalid_argument("split depth must be non-negative");
}

RadiusLadder::RadiusLadder(double t_min, double t_max, int count) {
  if (!(t_min > 0 && t_min < t_max) || count < 8) {
    throw std::invalid_argument("ladder requires 0 < tmin < tmax and count >= 8");
  }
  const double step = std::log(t_max / t_min) / (count - 1);
  radii_.reserve(count);
  for (int k = 0; k < count; ++k) radii_.push_back(k + 1 == count ? t_max : t_min * std::exp(step * k));
}

AngularFamily::AngularFamily(const BivarPoly& f, int split_depth) {
  BivarPoly p = f;
  d_.emplace_back(p);
  for (int k = 0; k <= split_depth; ++k) {
    p = angular_derivative(p);
    if (k == 0) radial_ = p.is_zero();
    d_.emplace_back(p);
  }
}

double AngularFamily::value(int k, double t, double theta) const {
  return d_[k](t * std::cos(theta), t * std::sin(theta));
}

namespace {

double bisect(const AngularFamily& fam, int k, double t, double a, double b, double va, double tol) {
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double vm = fam.value(k, t, m);
    if (vm == 0.0) return m;
    if (std::signbit(vm) == std::signbit(va)) {
      a = m;
      va = vm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Sign-changing zeros of the k-th angular derivative. The zeros of the next
// derivative split the circle into pieces where this one is monotone, which
// separates pairs of zeros far closer than the grid spacing.
std::vector<double> level_zeros(const AngularFamily& fam, int k, double t, int grid, double tol) {
  std::vector<double> nodes;
  nodes.reserve(grid);
  for (int i = 0; i < grid; ++i) nodes.push_back(kTwoPi * i / grid);
  if (k < fam.depth()) {
    const auto inner = level_zeros(fam, k + 1, t, grid, tol);
    nodes.insert(nodes.end(), inner.begin(), inner.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  }
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = fam.value(k, t, nodes[i]);

  std::vector<double> zeros;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::size_t n = (i + 1) % nodes.size();
    const double a = nodes[i];
    const double b = n == 0 ? nodes[0] + kTwoPi : nodes[n];
    const double va = vals[i], vb = vals[n];
    if (va == 0.0) {
      zeros.push_back(a);
      continue;
    }
    if (vb == 0.0 || std::signbit(va) == std::signbit(vb)) continue;
    zeros.push_back(wrap_angle(bisect(fam, k, t, a, b, va, tol)));
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

}  // namespace

std::vector<double> critical_angles(const AngularFamily& fam, double t, int grid, double tol) {
  if (fam.radial()) return {};
  return level_zeros(fam, 1, t, grid, tol);
}

CircleSample sample_circle(const AngularFamily& fam, double t, int grid, double tol) {
  CircleSample s;
  s.t = t;
  if (fam.radial()) {
    s.psi = s.psibar = fam.f()(t, 0.0);
    return s;
  }
  s.angles = critical_angles(fam, t, grid, tol);
  s.psi = std::numeric_limits<double>::infinity();
  s.psibar = -std::numeric_limits<double>::infinity();
  for (double th : s.angles) {
    const double v = fam.value(0, t, th);
    s.values.push_back(v);
    s.psi = std::min(s.psi, v);
    s.psibar = std::max(s.psibar, v);
  }
  for (int i = 0; i < grid; ++i) {
    const double v = fam.value(0, t, kTwoPi * i / grid);
    s.psi = std::min(s.psi, v);
    s.psibar = std::max(s.psibar, v);
  }
  return s;
}

SphereExtrema sphere_extrema(const BivarPoly& f, double t, int grid, double tol) {
  if (!(t > 0) || grid < 64) throw std::invalid_argument("sphere_extrema requires t > 0 and grid >= 64");
  const AngularFamily fam(f, OracleConfig{}.split_depth);
  const auto s = sample_circle(fam, t, grid, tol);
  return {s.psi, s.psibar};
}

std::vector<CircleSample> sweep_serial(const AngularFamily& fam, const RadiusLadder& ladder, int grid, double tol) {
  std::vector<CircleSample> out;
  out.reserve(ladder.size());
  for (double t : ladder.radii()) out.push_back(sample_circle(fam, t, grid, tol));
  return out;
}

std::vector<CircleSample> sweep_parallel(const AngularFamily& fam, const RadiusLadder& ladder, int grid, double tol) {
  const auto& radii = ladder.radii();
  const long n = static_cast<long>(radii.size());
  std::vector<CircleSample> out(radii.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = sample_circle(fam, radii[i], grid, tol);
  return out;
}

std::vector<CriticalPath> link_paths(const std::vector<CircleSample>& samples) {
  if (samples.empty()) return {};
  const std::size_t last = samples.size() - 1;
  const std::size_t n = samples[last].angles.size();
  std::vector<CriticalPath> paths(n);
  for (std::size_t p = 0; p < n; ++p) {
    paths[p].id = static_cast<int>(p);
    paths[p].theta.assign(samples.size(), 0.0);
    paths[p].values.assign(samples.size(), 0.0);
    paths[p].theta[last] = samples[last].angles[p];
    paths[p].values[last] = samples[last].values[p];
  }
  if (n == 0) return paths;

  // Paths keep their cyclic order, so matching is a cyclic shift; pick the
  // one with the smallest worst-case jump.
  for (std::size_t k = last; k-- > 0;) {
    const auto& cur = samples[k];
    if (cur.angles.size() != n) {
      throw GermError(ErrorKind::PathCountUnstable, std::to_string(cur.angles.size()) + " critical angles at t = " +
                                                        std::to_string(cur.t) + ", " + std::to_string(n) +
                                                        " at t = " + std::to_string(samples[k + 1].t));
    }
    std::size_t best_shift = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t sh = 0; sh < n; ++sh) {
      double cost = 0.0;
      for (std::size_t p = 0; p < n; ++p) cost = std::max(cost, circular_distance(paths[p].theta[k + 1], cur.angles[(p + sh) % n]));
      if (cost < best_cost) {
        best_cost = cost;
        best_shift = sh;
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t q = (p + best_shift) % n;
      paths[p].theta[k] = cur.angles[q];
      paths[p].values[k] = cur.values[q];
      paths[p].max_gap = std::max(paths[p].max_gap, circular_distance(paths[p].theta[k + 1], cur.angles[q]));
    }
  }
  return paths;
}

std::vector<CriticalPath> critical_paths(const BivarPoly& f, const RadiusLadder& ladder, int grid, double tol) {
  const AngularFamily fam(f, OracleConfig{}.split_depth);
  if (fam.radial()) throw std::invalid_argument("critical paths need a non-vanishing tangency polynomial");
  return link_paths(sweep_serial(fam, ladder, grid, tol));
}

std::string_view fit_status_name(FitStatus s) {
  switch (s) {
    case FitStatus::Ok: return "ok";
    case FitStatus::MixedSigns: return "mixed-signs";
    case FitStatus::AllBelowFloor: return "all-below-floor";
  }
  return "?";
}

FitResult estimate_exponent(const std::vector<double>& t, const std::vector<double>& v, double floor) {
  if (t.size() != v.size()) throw std::invalid_argument("estimate_exponent needs matching sample lists");
  std::vector<double> lx, ly;
  int pos = 0, neg = 0, first_sign = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(std::abs(v[k]) > floor) || !std::isfinite(v[k])) continue;
    const int s = v[k] > 0 ? 1 : -1;
    if (first_sign == 0) first_sign = s;
    (s > 0 ? pos : neg) += 1;
    lx.push_back(std::log(t[k]));
    ly.push_back(std::log(std::abs(v[k])));
  }
  FitResult r;
  r.samples_used = static_cast<int>(lx.size());
  if (lx.empty()) return r;
  r.status = (pos > 0 && neg > 0) ? FitStatus::MixedSigns : FitStatus::Ok;
  r.sign_est = first_sign;
  if (lx.size() < 2) return r;

  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  r.alpha_est = sxy / sxx;
  if (r.status == FitStatus::Ok) {
    double ssr = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      const double res = ly[k] - (my + r.alpha_est * (lx[k] - mx));
      ssr += res * res;
    }
    r.r_squared = syy > 0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  }
  return r;
}

namespace {

Rational min_of(const std::vector<std::pair<int, Rational>>& ks) {
  Rational m = ks.front().second;
  for (const auto& [id, a] : ks) m = std::min(m, a);
  return m;
}

Rational max_of(const std::vector<std::pair<int, Rational>>& ks) {
  Rational m = ks.front().second;
  for (const auto& [id, a] : ks) m = std::max(m, a);
  return m;
}

}  // namespace

Expectation expected_psi(const Classification& c) {
  if (!c.Kminus.empty()) return {-1, min_of(c.Kminus)};
  if (!c.K0.empty()) return {0, std::nullopt};
  return {1, max_of(c.Kplus)};
}

Expectation expected_psibar(const Classification& c) {
  if (!c.Kplus.empty()) return {1, min_of(c.Kplus)};
  if (!c.K0.empty()) return {0, std::nullopt};
  return {-1, max_of(c.Kminus)};
}

namespace {

struct ComponentEval {
  bool radial = false;
  int e = 1;
  std::vector<std::pair<int, double>> x, y;

  explicit ComponentEval(const HalfBranch& b) : radial(b.chart == Chart::Radial), e(b.e) {
    for (const auto& [k, c] : b.x.terms) x.emplace_back(k, b.field.approx(c));
    for (const auto& [k, c] : b.y.terms) y.emplace_back(k, b.field.approx(c));
  }

  static double eval(const std::vector<std::pair<int, double>>& ser, double s) {
    double acc = 0.0;
    for (const auto& [k, c] : ser) acc += c * std::pow(s, k);
    return acc;
  }

  std::pair<double, double> at(double s) const { return {eval(x, s), eval(y, s)}; }

  // The dominant coordinate is exactly +-s^e, so the radius-t point has
  // s <= t^(1/e).
  std::pair<double, double> point(double t) const {
    if (radial) return {t, 0.0};
    double lo = 0.0, hi = std::pow(t, 1.0 / e);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const auto [px, py] = at(mid);
      (std::hypot(px, py) < t ? lo : hi) = mid;
    }
    return at(0.5 * (lo + hi));
  }
};

double point_angle(std::pair<double, double> p) { return wrap_angle(std::atan2(p.second, p.first)); }

}  // namespace

std::pair<double, double> component_point(const HalfBranch& b, double t) { return ComponentEval(b).point(t); }

bool fit_matches(const FitResult& fit, const Expectation& e, const OracleConfig& cfg, bool require_r2) {
  if (e.sign == 0) return fit.status == FitStatus::AllBelowFloor;
  if (fit.status != FitStatus::Ok || fit.sign_est != e.sign || fit.samples_used < 2) return false;
  if (std::abs(fit.alpha_est - to_double(*e.alpha)) > cfg.alpha_tol) return false;
  return !require_r2 || fit.r_squared >= cfg.r2_min;
}

CrossCheckReport crosscheck(const GermAnalysis& a, const OracleConfig& cfg) {
  validate(cfg);
  CrossCheckReport rep;
  rep.config = cfg;
  rep.zero_floor = cfg.floor * std::max(1.0, a.f.l1_norm());
  rep.component_count = static_cast<int>(a.restrictions.size());

  const RadiusLadder ladder(cfg);
  const AngularFamily fam(a.f, cfg.split_depth);
  rep.samples = sweep_parallel(fam, ladder, cfg.grid, cfg.tol);

  std::vector<double> ts, psi, psibar;
  for (const auto& s : rep.samples) {
    ts.push_back(s.t);
    psi.push_back(s.psi);
    psibar.push_back(s.psibar);
  }
  rep.psi_fit = estimate_exponent(ts, psi, rep.zero_floor);
  rep.psibar_fit = estimate_exponent(ts, psibar, rep.zero_floor);
  rep.psi_expected = expected_psi(a.classification);
  rep.psibar_expected = expected_psibar(a.classification);
  rep.psi_ok = fit_matches(rep.psi_fit, rep.psi_expected, cfg, true);
  rep.psibar_ok = fit_matches(rep.psibar_fit, rep.psibar_expected, cfg, true);
  if (!rep.psi_ok) rep.failures.push_back("psi exponent fit disagrees with the classification");
  if (!rep.psibar_ok) rep.failures.push_back("psibar exponent fit disagrees with the classification");

  std::vector<ComponentEval> comps;
  for (const auto& r : a.restrictions) comps.emplace_back(r.component);
  const DoublePoly& f = fam.f();
  for (const auto& s : rep.samples) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : comps) {
      const auto [px, py] = c.point(s.t);
      const double v = f(px, py);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rep.psi_residual = std::max(rep.psi_residual, std::abs(s.psi - lo) / std::max(1.0, std::abs(s.psi)));
    rep.psibar_residual = std::max(rep.psibar_residual, std::abs(s.psibar - hi) / std::max(1.0, std::abs(s.psibar)));
  }
  if (rep.psi_residual > cfg.residual_tol) rep.failures.push_back("psi differs from the minimum over components");
  if (rep.psibar_residual > cfg.residual_tol) rep.failures.push_back("psibar differs from the maximum over components");

  if (!fam.radial()) {
    try {
      rep.paths = link_paths(rep.samples);
    } catch (const GermError& err) {
      if (err.kind() != ErrorKind::PathCountUnstable) throw;
      rep.failures.push_back(err.what());
    }
    rep.path_count = static_cast<int>(rep.paths.size());
    if (rep.path_count != rep.component_count) {
      rep.failures.push_back("critical path count " + std::to_string(rep.path_count) + " differs from component count " +
                             std::to_string(rep.component_count));
    }
    for (const auto& p : rep.paths) {
      if (p.max_gap > cfg.max_jump) rep.failures.push_back("critical path " + std::to_string(p.id) + " jumps");
    }

    // Pair paths with components at the largest radius, closest first.
    if (rep.path_count == rep.component_count && rep.path_count > 0) {
      const double tmax = ts.back();
      std::vector<std::tuple<double, int, int>> pairs;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        const double ang = point_angle(comps[c].point(tmax));
        for (const auto& p : rep.paths) {
          pairs.emplace_back(circular_distance(ang, p.theta.back()), p.id, static_cast<int>(c));
        }
      }
      std::sort(pairs.begin(), pairs.end());
      std::vector<int> comp_of(rep.paths.size(), -1);
      std::vector<bool> used(comps.size(), false);
      for (const auto& [d, pid, c] : pairs) {
        if (comp_of[pid] >= 0 || used[c]) continue;
        comp_of[pid] = c;
        used[c] = true;
      }
      for (const auto& p : rep.paths) {
        PathCheck pc;
        pc.path_id = p.id;
        pc.component = comp_of[p.id];
        pc.fit = estimate_exponent(ts, p.values, rep.zero_floor);
        const auto& r = a.restrictions[pc.component];
        pc.expected = {r.sign, r.alpha};
        pc.ok = fit_matches(pc.fit, pc.expected, cfg, false);
        if (!pc.ok) rep.failures.push_back("critical path " + std::to_string(p.id) + " disagrees with its component");
        rep.path_checks.push_back(std::move(pc));
      }
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

CrossCheckReport crosscheck(const BivarPoly& f, const ExpansionConfig& ecfg, const OracleConfig& cfg) {
  return crosscheck(analyze(f, ecfg), cfg);
}

}  // namespace germinv
