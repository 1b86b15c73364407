#pragma once

#include <germinv/invariant.hpp>

#include <optional>
#include <string>
#include <vector>

namespace germinv {

/// Floating-point copy of a BivarPoly for fast evaluation.
class DoublePoly {
 public:
  DoublePoly() = default;
  explicit DoublePoly(const BivarPoly& p);

  double operator()(double x, double y) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms_;
  int max_i_ = 0, max_j_ = 0;
};

/// x*dp/dy - y*dp/dx, the derivative of p(t cos th, t sin th) in th.
BivarPoly angular_derivative(const BivarPoly& p);

struct OracleConfig {
  double t_min = 1e-4;
  double t_max = 1e-1;
  int ladder_count = 40;
  int grid = 1024;
  double tol = 1e-14;
  /// Relative zero floor, scaled by max(1, |f|_1).
  double floor = 1e-14;
  /// Extra derivative levels used to split nearly coincident critical angles.
  int split_depth = 3;
  /// Largest angle change allowed between neighbouring radii on one path.
  double max_jump = 0.5;
  double alpha_tol = 0.05;
  double r2_min = 0.999;
  double residual_tol = 1e-9;
};

/// Throws std::invalid_argument unless 0 < t_min < t_max, count >= 8,
/// grid >= 64 and tol > 0.
void validate(const OracleConfig& cfg);

/// Geometric radii, ascending.
class RadiusLadder {
 public:
  RadiusLadder(double t_min, double t_max, int count);
  explicit RadiusLadder(const OracleConfig& cfg) : RadiusLadder(cfg.t_min, cfg.t_max, cfg.ladder_count) {}

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }

 private:
  std::vector<double> radii_;
};

/// f and its first angular derivatives, in double precision.
class AngularFamily {
 public:
  AngularFamily(const BivarPoly& f, int split_depth);

  /// True when f is constant on every circle (the tangency polynomial vanishes).
  bool radial() const { return radial_; }
  double value(int k, double t, double theta) const;
  const DoublePoly& f() const { return d_.front(); }
  int depth() const { return static_cast<int>(d_.size()) - 1; }

 private:
  std::vector<DoublePoly> d_;
  bool radial_ = false;
};

/// Sorted zeros in [0, 2pi) of th -> f'(t cos th, t sin th) where it changes sign.
std::vector<double> critical_angles(const AngularFamily& fam, double t, int grid, double tol);

struct SphereExtrema {
  double psi = 0.0;
  double psibar = 0.0;
};

SphereExtrema sphere_extrema(const BivarPoly& f, double t, int grid, double tol);

/// Everything measured on one circle.
struct CircleSample {
  double t = 0.0;
  double psi = 0.0;
  double psibar = 0.0;
  std::vector<double> angles;
  std::vector<double> values;
};

CircleSample sample_circle(const AngularFamily& fam, double t, int grid, double tol);

/// One sample per radius, in ladder order. Both give identical results.
std::vector<CircleSample> sweep_serial(const AngularFamily& fam, const RadiusLadder& ladder, int grid, double tol);
std::vector<CircleSample> sweep_parallel(const AngularFamily& fam, const RadiusLadder& ladder, int grid, double tol);

struct CriticalPath {
  int id = 0;
  /// Indexed like the ladder.
  std::vector<double> theta;
  std::vector<double> values;
  double max_gap = 0.0;
};

/// Links critical angles from the largest radius down by nearest angle.
/// Throws PathCountUnstable when the count changes along the ladder.
std::vector<CriticalPath> link_paths(const std::vector<CircleSample>& samples);
std::vector<CriticalPath> critical_paths(const BivarPoly& f, const RadiusLadder& ladder, int grid, double tol);

enum class FitStatus { Ok, MixedSigns, AllBelowFloor };

std::string_view fit_status_name(FitStatus s);

struct FitResult {
  double alpha_est = 0.0;
  int sign_est = 0;
  double r_squared = 0.0;
  int samples_used = 0;
  FitStatus status = FitStatus::AllBelowFloor;
};

/// Least-squares slope of log|v| against log t over samples with |v| > floor.
FitResult estimate_exponent(const std::vector<double>& t, const std::vector<double>& v, double floor);

/// Leading behaviour expected from the symbolic side; sign 0 means
/// numerically zero.
struct Expectation {
  int sign = 0;
  std::optional<Rational> alpha;
};

/// psi is the min over components and psibar the max, so their orders
/// follow from the classification.
Expectation expected_psi(const Classification& c);
Expectation expected_psibar(const Classification& c);

/// Point of the component on the circle of radius t.
std::pair<double, double> component_point(const HalfBranch& b, double t);

struct PathCheck {
  int path_id = 0;
  int component = -1;
  FitResult fit;
  Expectation expected;
  bool ok = false;
};

struct CrossCheckReport {
  OracleConfig config;
  double zero_floor = 0.0;
  std::vector<CircleSample> samples;
  FitResult psi_fit, psibar_fit;
  Expectation psi_expected, psibar_expected;
  bool psi_ok = false, psibar_ok = false;
  /// max over the ladder of |psi - min_k f_k| / max(1, |psi|), same for psibar.
  double psi_residual = 0.0, psibar_residual = 0.0;
  int path_count = 0;
  int component_count = 0;
  std::vector<CriticalPath> paths;
  std::vector<PathCheck> path_checks;
  std::vector<std::string> failures;
  bool pass = false;
};

bool fit_matches(const FitResult& fit, const Expectation& e, const OracleConfig& cfg, bool require_r2);

CrossCheckReport crosscheck(const GermAnalysis& a, const OracleConfig& cfg = {});
CrossCheckReport crosscheck(const BivarPoly& f, const ExpansionConfig& ecfg = {}, const OracleConfig& cfg = {});

}  // namespace germinv
