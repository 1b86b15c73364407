// germinv: contact invariant of plane polynomial germs.

#include <germinv/errors.hpp>
#include <germinv/invariant.hpp>
#include <germinv/oracle.hpp>
#include <germinv/parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

using namespace germinv;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kExcluded = 1, kParse = 2, kSymbolic = 3, kCrossFail = 4 };

struct RunConfig {
  ExpansionConfig expansion;
  OracleConfig oracle;
  std::string format;
};

std::string num(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string header(const RunConfig& c) {
  const auto& e = c.expansion;
  const auto& o = c.oracle;
  return "order=" + std::to_string(e.order) + " max_order=" + std::to_string(e.max_order) +
         " max_bits=" + std::to_string(e.max_bits) + " tmin=" + num(o.t_min) + " tmax=" + num(o.t_max) +
         " ladder=" + std::to_string(o.ladder_count) + " grid=" + std::to_string(o.grid) + " tol=" + num(o.tol) +
         " floor=" + num(o.floor);
}

ordered_json config_json(const RunConfig& c) {
  return {{"order", c.expansion.order},     {"max_order", c.expansion.max_order}, {"max_bits", c.expansion.max_bits},
          {"tmin", c.oracle.t_min},         {"tmax", c.oracle.t_max},             {"ladder", c.oracle.ladder_count},
          {"grid", c.oracle.grid},          {"tol", c.oracle.tol},                {"floor", c.oracle.floor}};
}

ordered_json rational_or_null(const std::optional<Rational>& r) {
  return r ? ordered_json(r->get_str()) : ordered_json(nullptr);
}

std::string coeff_text(const NumberField& k, const UniPoly& c) {
  if (k.is_rational()) return k.as_rational(c).get_str();
  return "(" + c.to_string('a') + ")";
}

std::string series_text(const NumberField& k, const PuiseuxSeries& s) {
  std::string out;
  for (const auto& [e, c] : s.terms) {
    if (!out.empty()) out += " + ";
    out += coeff_text(k, c) + "*s^" + std::to_string(e);
  }
  if (out.empty()) out = "0";
  if (s.truncation) out += " + O(s^" + std::to_string(*s.truncation + 1) + ")";
  return out;
}

ordered_json field_json(const NumberField& k) {
  const auto& g = k.generator();
  return {{"degree", k.degree()},
          {"modulus", g.defining().to_string('a')},
          {"interval", {g.lo().get_str(), g.hi().get_str()}},
          {"approx", k.approx(UniPoly::monomial(Rational(1), 1))}};
}

ordered_json series_json(const NumberField& k, const PuiseuxSeries& s) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : s.terms) {
    terms.push_back({{"k", e}, {"coeff", coeff_text(k, c)}, {"approx", k.approx(c)}});
  }
  return {{"terms", terms}, {"truncation", s.truncation ? ordered_json(*s.truncation) : ordered_json(nullptr)}};
}

std::string class_name(const Restriction& r) { return r.sign == 0 ? "K0" : (r.sign < 0 ? "K-" : "K+"); }

ordered_json component_json(int id, const Restriction& r) {
  const auto& b = r.component;
  ordered_json lead = nullptr;
  if (!r.series.terms.empty()) {
    const auto& [k, c] = *r.series.terms.begin();
    lead = {{"k", k}, {"coeff", coeff_text(b.field, c)}, {"approx", b.field.approx(c)}};
  }
  return {{"id", id},
          {"chart", std::string(chart_name(b.chart))},
          {"side", b.side},
          {"e", b.e},
          {"field", field_json(b.field)},
          {"x", series_json(b.field, b.x)},
          {"y", series_json(b.field, b.y)},
          {"restriction",
           {{"class", class_name(r)}, {"sign", r.sign}, {"alpha", rational_or_null(r.alpha)}, {"leading", lead}}}};
}

ordered_json inv_json(const GermInvariant& v) { return {{"lo", v.lo().get_str()}, {"hi", v.hi().get_str()}}; }

ordered_json classification_json(const Classification& c) {
  ordered_json km = ordered_json::array(), kp = ordered_json::array();
  for (const auto& [id, a] : c.Kminus) km.push_back({{"id", id}, {"alpha", a.get_str()}});
  for (const auto& [id, a] : c.Kplus) kp.push_back({{"id", id}, {"alpha", a.get_str()}});
  return {{"K0", c.K0}, {"Kminus", km}, {"Kplus", kp}};
}

ordered_json analysis_json(const GermAnalysis& a) {
  ordered_json comps = ordered_json::array();
  for (std::size_t k = 0; k < a.restrictions.size(); ++k) comps.push_back(component_json(static_cast<int>(k), a.restrictions[k]));
  return {{"f", to_string(a.f)},
          {"tangency",
           {{"h", to_string(a.tangency.h)},
            {"h_sf", a.tangency.degenerate ? ordered_json(nullptr) : ordered_json(to_string(a.tangency.h_sf))},
            {"degenerate", a.tangency.degenerate}}},
          {"components", comps},
          {"classification", classification_json(a.classification)},
          {"inv", inv_json(a.inv)}};
}

void print_components(std::ostream& os, const GermAnalysis& a) {
  os << "components: " << a.restrictions.size() << "\n";
  for (std::size_t k = 0; k < a.restrictions.size(); ++k) {
    const auto& r = a.restrictions[k];
    const auto& b = r.component;
    os << "  [" << k << "] " << chart_name(b.chart) << " side=" << (b.side > 0 ? "+" : "-") << " e=" << b.e << " "
       << class_name(r);
    if (r.alpha) os << " alpha=" << r.alpha->get_str();
    os << "\n      x(s) = " << series_text(b.field, b.x) << "\n      y(s) = " << series_text(b.field, b.y) << "\n";
    if (!b.field.is_rational()) {
      const auto& g = b.field.generator();
      os << "      a: root of " << g.defining().to_string('a') << " in [" << g.lo().get_str() << ", "
         << g.hi().get_str() << "], a ~ " << num(b.field.approx(UniPoly::monomial(Rational(1), 1))) << "\n";
    }
  }
}

void print_classification(std::ostream& os, const Classification& c) {
  os << "K0: " << c.K0.size() << "\nK-:";
  for (const auto& [id, a] : c.Kminus) os << " " << a.get_str();
  os << "\nK+:";
  for (const auto& [id, a] : c.Kplus) os << " " << a.get_str();
  os << "\n";
}

int cmd_inv(const std::string& text, const RunConfig& cfg, bool branches_only) {
  const auto a = analyze(parse_poly(text), cfg.expansion);
  const std::string fmt = cfg.format.empty() ? (branches_only ? "json" : "text") : cfg.format;
  if (fmt == "json") {
    ordered_json j = {{"command", branches_only ? "branches" : "inv"}, {"config", config_json(cfg)}};
    j.update(analysis_json(a));
    if (branches_only) {
      j.erase("classification");
      j.erase("inv");
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  if (fmt == "csv") {
    std::cout << "# " << header(cfg) << "\nid,chart,side,e,class,sign,alpha\n";
    for (std::size_t k = 0; k < a.restrictions.size(); ++k) {
      const auto& r = a.restrictions[k];
      std::cout << k << "," << chart_name(r.component.chart) << "," << r.component.side << "," << r.component.e << ","
                << class_name(r) << "," << r.sign << "," << (r.alpha ? r.alpha->get_str() : "") << "\n";
    }
    return kOk;
  }
  std::cout << "# " << header(cfg) << "\n";
  std::cout << "f = " << to_string(a.f) << "\n";
  std::cout << "h = " << to_string(a.tangency.h) << (a.tangency.degenerate ? "  (degenerate: f is radial)" : "") << "\n";
  print_components(std::cout, a);
  if (branches_only) return kOk;
  print_classification(std::cout, a.classification);
  if (a.classification.Kminus.empty() && a.classification.Kplus.empty()) {
    std::cout << "note: every component lies in K0\n";
  }
  std::cout << "Inv = " << to_string(a.inv) << "\n";
  return kOk;
}

int cmd_compare(const std::string& ftext, const std::string& gtext, const RunConfig& cfg) {
  const auto a = analyze(parse_poly(ftext), cfg.expansion);
  const auto b = analyze(parse_poly(gtext), cfg.expansion);
  const Verdict v = equivalent_possible(a.inv, b.inv);
  if (cfg.format == "json") {
    ordered_json j = {{"command", "compare"},
                      {"config", config_json(cfg)},
                      {"f", {{"poly", to_string(a.f)}, {"inv", inv_json(a.inv)}}},
                      {"g", {{"poly", to_string(b.f)}, {"inv", inv_json(b.inv)}}},
                      {"verdict", std::string(verdict_name(v))}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# " << header(cfg) << "\n";
    std::cout << "Inv(f) = " << to_string(a.inv) << "   f = " << to_string(a.f) << "\n";
    std::cout << "Inv(g) = " << to_string(b.inv) << "   g = " << to_string(b.f) << "\n";
    std::cout << verdict_name(v) << "\n";
  }
  return v == Verdict::Possible ? kOk : kExcluded;
}

struct PsiRow {
  double t, psi, psibar;
  int path_id;
  double theta, value;
};

// One row per radius; the path columns describe the critical path attaining psi.
std::vector<PsiRow> psi_rows(const std::vector<CircleSample>& samples, const std::vector<CriticalPath>& paths) {
  std::vector<PsiRow> rows;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    PsiRow r{s.t, s.psi, s.psibar, -1, 0.0, s.psi};
    for (const auto& p : paths) {
      if (r.path_id < 0 || p.values[k] < r.value) {
        r.path_id = p.id;
        r.theta = p.theta[k];
        r.value = p.values[k];
      }
    }
    rows.push_back(r);
  }
  return rows;
}

int cmd_psi(const std::string& text, const RunConfig& cfg) {
  const BivarPoly f = parse_poly(text);
  validate(cfg.oracle);
  const AngularFamily fam(f, cfg.oracle.split_depth);
  const auto samples = sweep_parallel(fam, RadiusLadder(cfg.oracle), cfg.oracle.grid, cfg.oracle.tol);
  std::vector<CriticalPath> paths;
  if (!fam.radial()) {
    try {
      paths = link_paths(samples);
    } catch (const GermError& err) {
      if (err.kind() != ErrorKind::PathCountUnstable) throw;
      std::cerr << "warning: " << err.what() << "\n";
    }
  }
  const auto rows = psi_rows(samples, paths);
  if (cfg.format == "json") {
    ordered_json jr = ordered_json::array();
    for (const auto& r : rows) {
      jr.push_back({{"t", r.t},
                    {"psi", r.psi},
                    {"psibar", r.psibar},
                    {"path_id", r.path_id < 0 ? ordered_json(nullptr) : ordered_json(r.path_id)},
                    {"theta", r.path_id < 0 ? ordered_json(nullptr) : ordered_json(r.theta)},
                    {"f_value", r.value}});
    }
    std::cout << ordered_json{{"command", "psi"}, {"config", config_json(cfg)}, {"f", to_string(f)}, {"rows", jr}}.dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "# " << header(cfg) << "\n";
  std::cout << "t,psi,psibar,path_id,theta,f_value\n";
  for (const auto& r : rows) {
    std::cout << num(r.t, "%.17g") << "," << num(r.psi, "%.17g") << "," << num(r.psibar, "%.17g") << ","
              << (r.path_id < 0 ? "" : std::to_string(r.path_id)) << ","
              << (r.path_id < 0 ? "" : num(r.theta, "%.17g")) << "," << num(r.value, "%.17g") << "\n";
  }
  return kOk;
}

ordered_json fit_json(const FitResult& f) {
  return {{"alpha_est", f.alpha_est},
          {"sign_est", f.sign_est},
          {"r_squared", f.r_squared},
          {"samples_used", f.samples_used},
          {"status", std::string(fit_status_name(f.status))}};
}

ordered_json expectation_json(const Expectation& e) { return {{"sign", e.sign}, {"alpha", rational_or_null(e.alpha)}}; }

std::string fit_text(const FitResult& f) {
  if (f.status == FitStatus::AllBelowFloor) return "all below floor";
  return "alpha~" + num(f.alpha_est, "%.4f") + " sign " + (f.sign_est > 0 ? "+" : "-") + " r2=" +
         num(f.r_squared, "%.6f") + (f.status == FitStatus::MixedSigns ? " (mixed signs)" : "");
}

std::string expectation_text(const Expectation& e) {
  if (e.sign == 0) return "zero";
  return std::string(e.sign > 0 ? "+" : "-") + "t^" + e.alpha->get_str();
}

int cmd_crosscheck(const std::string& text, const RunConfig& cfg) {
  const auto a = analyze(parse_poly(text), cfg.expansion);
  const auto rep = crosscheck(a, cfg.oracle);
  if (cfg.format == "json") {
    ordered_json paths = ordered_json::array();
    for (const auto& pc : rep.path_checks) {
      paths.push_back({{"id", pc.path_id},
                       {"component", pc.component},
                       {"fit", fit_json(pc.fit)},
                       {"expected", expectation_json(pc.expected)},
                       {"ok", pc.ok}});
    }
    ordered_json j = {{"command", "crosscheck"},
                      {"config", config_json(cfg)},
                      {"f", to_string(a.f)},
                      {"inv", inv_json(a.inv)},
                      {"pass", rep.pass},
                      {"zero_floor", rep.zero_floor},
                      {"psi", {{"fit", fit_json(rep.psi_fit)}, {"expected", expectation_json(rep.psi_expected)}, {"ok", rep.psi_ok}}},
                      {"psibar",
                       {{"fit", fit_json(rep.psibar_fit)}, {"expected", expectation_json(rep.psibar_expected)}, {"ok", rep.psibar_ok}}},
                      {"residual", {{"psi", rep.psi_residual}, {"psibar", rep.psibar_residual}}},
                      {"path_count", rep.path_count},
                      {"component_count", rep.component_count},
                      {"paths", paths},
                      {"failures", rep.failures}};
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "# " << header(cfg) << "\n";
    std::cout << "t,psi,psibar,path_id,theta,f_value\n";
    for (std::size_t k = 0; k < rep.samples.size(); ++k) {
      const auto& s = rep.samples[k];
      for (const auto& p : rep.paths) {
        std::cout << num(s.t, "%.17g") << "," << num(s.psi, "%.17g") << "," << num(s.psibar, "%.17g") << "," << p.id
                  << "," << num(p.theta[k], "%.17g") << "," << num(p.values[k], "%.17g") << "\n";
      }
      if (rep.paths.empty()) {
        std::cout << num(s.t, "%.17g") << "," << num(s.psi, "%.17g") << "," << num(s.psibar, "%.17g") << ",,,"
                  << num(s.psi, "%.17g") << "\n";
      }
    }
  } else {
    std::cout << "# " << header(cfg) << "\n";
    std::cout << "f = " << to_string(a.f) << "\nInv = " << to_string(a.inv) << "\n";
    std::cout << "psi:    " << fit_text(rep.psi_fit) << "   expected " << expectation_text(rep.psi_expected)
              << (rep.psi_ok ? "  ok" : "  MISMATCH") << "\n";
    std::cout << "psibar: " << fit_text(rep.psibar_fit) << "   expected " << expectation_text(rep.psibar_expected)
              << (rep.psibar_ok ? "  ok" : "  MISMATCH") << "\n";
    std::cout << "residual: psi " << num(rep.psi_residual, "%.3e") << "  psibar " << num(rep.psibar_residual, "%.3e")
              << "\n";
    std::cout << "critical paths: " << rep.path_count << "   components: " << rep.component_count << "\n";
    for (const auto& pc : rep.path_checks) {
      std::cout << "  path " << pc.path_id << " -> component " << pc.component << ": " << fit_text(pc.fit)
                << "   expected " << expectation_text(pc.expected) << (pc.ok ? "  ok" : "  MISMATCH") << "\n";
    }
    for (const auto& f : rep.failures) std::cout << "failure: " << f << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass ? kOk : kCrossFail;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownVariable:
    case ErrorKind::NegativeExponent:
    case ErrorKind::NonVanishingGerm:
      return kParse;
    default:
      return kSymbolic;
  }
}

void add_config_flags(CLI::App* sub, RunConfig& cfg, const std::vector<std::string>& formats) {
  sub->add_option("--order", cfg.expansion.order, "Initial series order")->capture_default_str();
  sub->add_option("--max-order", cfg.expansion.max_order, "Largest series order tried")->capture_default_str();
  sub->add_option("--max-bits", cfg.expansion.max_bits, "Interval refinement budget in bits")->capture_default_str();
  sub->add_option("--tmin", cfg.oracle.t_min, "Smallest radius")->capture_default_str();
  sub->add_option("--tmax", cfg.oracle.t_max, "Largest radius")->capture_default_str();
  sub->add_option("--ladder", cfg.oracle.ladder_count, "Number of radii")->capture_default_str();
  sub->add_option("--grid", cfg.oracle.grid, "Angular seed grid size")->capture_default_str();
  sub->add_option("--tol", cfg.oracle.tol, "Angle bisection tolerance")->capture_default_str();
  sub->add_option("--floor", cfg.oracle.floor, "Relative zero floor")->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-Lipschitz contact invariant of plane polynomial germs"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string f_text, g_text;
  const std::vector<std::string> all{"text", "json", "csv"};

  auto* inv = app.add_subcommand("inv", "Compute Inv(f)");
  inv->add_option("f", f_text, "Polynomial in x, y")->required();
  add_config_flags(inv, cfg, all);

  auto* compare = app.add_subcommand("compare", "Test Inv(f) = +-Inv(g)");
  compare->add_option("f", f_text)->required();
  compare->add_option("g", g_text)->required();
  add_config_flags(compare, cfg, {"text", "json"});

  auto* branches = app.add_subcommand("branches", "List tangency components with restrictions");
  branches->add_option("f", f_text)->required();
  add_config_flags(branches, cfg, all);

  auto* psi = app.add_subcommand("psi", "Circle minimum and maximum over the radius ladder");
  psi->add_option("f", f_text)->required();
  add_config_flags(psi, cfg, {"csv", "json"});

  auto* cross = app.add_subcommand("crosscheck", "Compare the numerical oracle with the symbolic result");
  cross->add_option("f", f_text)->required();
  add_config_flags(cross, cfg, all);

  // A leading '-' would read as a flag; a space keeps it positional and the
  // polynomial parser skips it.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (auto& a : args) {
    if (a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-h") a.insert(a.begin(), ' ');
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    validate(cfg.expansion);
    validate(cfg.oracle);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*inv) return cmd_inv(f_text, cfg, false);
    if (*branches) return cmd_inv(f_text, cfg, true);
    if (*compare) return cmd_compare(f_text, g_text, cfg);
    if (*psi) return cmd_psi(f_text, cfg);
    if (*cross) return cmd_crosscheck(f_text, cfg);
  } catch (const GermError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSymbolic;
  }
  return kOk;
}
