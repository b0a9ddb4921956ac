#include "hausdorff/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hausdorff/errors.hpp"
#include "hausdorff/maximal.hpp"
#include "hausdorff/norms.hpp"
#include "hausdorff/operator.hpp"
#include "hausdorff/parallel.hpp"

namespace hausdorff {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBoundTol = 1e-4;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}


double parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  auto plain = [&](const std::string& u) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(u, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != u.size()) throw InvalidInput(where + ": not a number: '" + text + "'");
    return v;
  };
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    return plain(trim(t.substr(0, slash))) / plain(trim(t.substr(slash + 1)));
  }
  if (const auto caret = t.find('^'); caret != std::string::npos) {
    return std::pow(plain(trim(t.substr(0, caret))), plain(trim(t.substr(caret + 1))));
  }
  return plain(t);
}

int parse_int(const std::string& text, const std::string& where) {
  const double v = parse_number(text, where);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidInput(where + ": not an integer: '" + text + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, where));
  if (out.empty()) throw InvalidInput(where + ": empty list");
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "theorem", "n",      "kernel", "field",  "b",      "f",           "p",
      "q",       "p1",     "p2",     "q1",     "q2",     "alpha",       "alpha1",
      "alpha2",  "lambda", "beta",   "k_min",  "k_max",  "radial_points", "angular_points",
      "dilations", "levels", "pinned_ratio", "x", "expected", "tol", "ladder_step",
      "sample_points"};
  return keys;
}

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> values;
};

Scenario build_scenario(const Section& sec, const std::string& source) {
  Scenario s;
  s.id = sec.name;
  s.dilations = default_dilations();
  auto where = [&](const std::string& key) {
    return source + ":" + std::to_string(sec.values.at(key).second) + ": " + key;
  };
  auto has = [&](const std::string& key) { return sec.values.count(key) > 0; };
  auto str = [&](const std::string& key) { return sec.values.at(key).first; };
  auto num = [&](const std::string& key, double& out) {
    if (has(key)) out = parse_number(str(key), where(key));
  };
  auto integer = [&](const std::string& key, int& out) {
    if (has(key)) out = parse_int(str(key), where(key));
  };
  const std::string head = source + ":" + std::to_string(sec.line) + ": scenario '" + s.id + "'";
  for (const char* req : {"theorem", "kernel", "f"}) {
    if (!has(req)) throw InvalidInput(head + " is missing required key '" + req + "'");
  }
  s.theorem = parse_theorem(str("theorem"));
  if (s.theorem != TheoremId::Pointwise && !has("b")) {
    throw InvalidInput(head + " is missing required key 'b'");
  }
  integer("n", s.n);
  if (s.n < 1 || s.n > 3) throw InvalidInput(head + ": n must be 1, 2 or 3");
  s.kernel = str("kernel");
  if (has("field")) s.field = str("field");
  if (has("b")) s.b = str("b");
  s.f = str("f");
  ExponentBundle& e = s.exponents;
  num("p", e.p);
  num("q", e.q);
  num("p1", e.p1);
  num("p2", e.p2);
  num("q1", e.q1);
  num("q2", e.q2);
  num("alpha", e.alpha);
  num("alpha1", e.alpha1);
  num("alpha2", e.alpha2);
  num("lambda", e.lambda);
  num("beta", e.beta);
  s.grid.n = s.n;
  integer("k_min", s.grid.k_min);
  integer("k_max", s.grid.k_max);
  integer("radial_points", s.grid.radial_points_per_shell);
  integer("angular_points", s.grid.angular_points);
  s.grid.validate();
  if (has("dilations")) s.dilations = parse_list(str("dilations"), where("dilations"));
  for (double mu : s.dilations) {
    if (!(mu > 0.0)) throw InvalidInput(head + ": dilations must be positive");
  }
  integer("levels", s.levels);
  if (s.levels < 1) throw InvalidInput(head + ": levels must be >= 1");
  if (has("pinned_ratio")) s.pinned_ratio = parse_number(str("pinned_ratio"), where("pinned_ratio"));
  if (has("x")) s.x = parse_list(str("x"), where("x"));
  if (has("expected")) s.expected = parse_number(str("expected"), where("expected"));
  num("tol", s.tol);
  if (!(s.tol > 0.0)) throw InvalidInput(head + ": tol must be positive");
  num("ladder_step", s.ladder_step);
  integer("sample_points", s.sample_points);
  if (s.sample_points < 1) throw InvalidInput(head + ": sample_points must be >= 1");
  if (s.theorem == TheoremId::Pointwise && static_cast<int>(s.x.size()) != s.n) {
    throw InvalidInput(head + ": pointwise scenarios need x with n coordinates");
  }
  return s;
}


struct Context {
  const Scenario& s;
  OperatorSpec spec;
  ScalarField b;
  ScalarField f;
  double base_tol;
  int threads;
  std::uint64_t seed;
};

RadialGrid grid_at(const Scenario& s, int level) {
  RadialGrid g = s.grid;
  g.n = s.n;
  g.radial_points_per_shell <<= level;
  return g;
}

double tol_at(double base, int level) { return base / std::pow(4.0, level); }

CubeRule rule_at(int n, int level, double tol) {
  CubeRule r;
  r.nodes_per_axis = (n == 1 ? 64 : (n == 2 ? 32 : 12)) << level;
  r.tol = tol;
  return r;
}

std::vector<double> scale_ladder(const Scenario& s) {
  return geometric_ladder(s.grid.k_min - 1, s.grid.k_max + 1, s.ladder_step);
}

double symbol_norm(const Context& c, const ScalarField& b, int level) {
  const RadialGrid g = grid_at(c.s, level);
  const ExponentBundle& e = c.s.exponents;
  switch (c.s.theorem) {
    case TheoremId::T4_1:
    case TheoremId::T4_2:
    case TheoremId::OpenCmoLp: {
      const auto radii = cmo_radius_ladder(g, c.s.ladder_step);
      return cmo_norm(b, e.q, radii, g.n, tol_at(c.base_tol, level));
    }
    default: {
      const auto battery = lipschitz_battery(g, c.seed);
      return lipschitz_norm(b, e.beta, battery);
    }
  }
}

ScalarField commutator_field(const Context& c, const ScalarField& b, const ScalarField& f, int level) {
  const RadialGrid g = grid_at(c.s, level);
  OperatorOptions oo;
  oo.tol = tol_at(c.base_tol, level);
  const OperatorSpec& spec = c.spec;
  auto fn = [spec, b, f, oo](const Point& x) {
    return commutator_apply(spec, b, f, x, oo, CommutatorForm::Single);
  };
  return tabulate_field("commutator", fn, g, c.threads);
}

// The function-space norm of the commutator (lhs = true) or of f.
double theorem_norm(const Context& c, const ScalarField& h, int level, bool lhs) {
  const Scenario& s = c.s;
  const ExponentBundle& e = s.exponents;
  const RadialGrid g = grid_at(s, level);
  const double tol = tol_at(c.base_tol, level);
  const CubeRule rule = rule_at(s.n, level, tol);
  switch (s.theorem) {
    case TheoremId::T3_1: {
      const auto battery = morrey_battery(g, s.ladder_step);
      return morrey_norm(h, lhs ? e.q : e.p, e.lambda, battery, g, rule);
    }
    case TheoremId::T3_2:
    case TheoremId::OpenCmoLp:
      return lp_norm(h, lhs ? e.q : e.p, g, tol);
    case TheoremId::T3_3:
      return lhs ? herz_morrey_norm(h, e.alpha, e.lambda, e.p2, e.q2, g.k_min, g.k_max, g.n, tol)
                 : herz_morrey_norm(h, e.alpha, e.lambda, e.p1, e.q1, g.k_min, g.k_max, g.n, tol);
    case TheoremId::T3_4:
      return lhs ? herz_norm(h, e.alpha, e.p2, e.q2, g.k_min, g.k_max, g.n, tol)
                 : herz_norm(h, e.alpha, e.p1, e.q1, g.k_min, g.k_max, g.n, tol);
    case TheoremId::T3_5:
      if (!lhs) return lp_norm(h, e.p, g, tol);
      return triebel_lizorkin_norm(h, e.beta, e.p, g, scale_ladder(s), rule, c.threads);
    case TheoremId::T4_1:
      return lhs ? herz_morrey_norm(h, e.alpha2, e.lambda, e.p, e.q2, g.k_min, g.k_max, g.n, tol)
                 : herz_morrey_norm(h, e.alpha1, e.lambda, e.p, e.q1, g.k_min, g.k_max, g.n, tol);
    case TheoremId::T4_2:
      return lhs ? herz_norm(h, e.alpha2, e.p, e.q2, g.k_min, g.k_max, g.n, tol)
                 : herz_norm(h, e.alpha1, e.p, e.q1, g.k_min, g.k_max, g.n, tol);
    default:
      throw InvalidInput("theorem has no norm pair");
  }
}

double safe_ratio(double lhs, double den) {
  if (lhs == 0.0) return 0.0;
  return lhs / den;
}

struct Sample {
  double lhs, f_norm, b_norm, ratio;
};

Sample theorem_sample(const Context& c, double k_value, const ScalarField& b, double mu, int level) {
  const ScalarField f = mu == 1.0 ? c.f : c.f.dilated(mu);
  const ScalarField g = commutator_field(c, b, f, level);
  Sample out;
  out.lhs = theorem_norm(c, g, level, true);
  out.f_norm = theorem_norm(c, f, level, false);
  out.b_norm = symbol_norm(c, b, level);
  out.ratio = safe_ratio(out.lhs, k_value * out.b_norm * out.f_norm);
  return out;
}

std::vector<Point> sample_points(const Scenario& s) {
  const int count = s.sample_points;
  const double lo = s.grid.k_min, hi = s.grid.k_max - 1;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
    const double r = std::exp2(lo + t * (hi - lo));
    Point x(s.n);
    if (s.n == 1) {
      x.c[0] = i % 2 == 0 ? r : -r;
    } else if (s.n == 2) {
      x.c[0] = r * std::cos(golden * i + 0.1);
      x.c[1] = r * std::sin(golden * i + 0.1);
    } else {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rho = std::sqrt(1.0 - z * z);
      x.c[0] = r * rho * std::cos(golden * i);
      x.c[1] = r * rho * std::sin(golden * i);
      x.c[2] = r * z;
    }
    out.push_back(x);
  }
  return out;
}

struct LemmaSample {
  double c_emp, max_lhs, max_bound, b_norm;
};

LemmaSample lemma_sample(const Context& c, double mu, int level) {
  const Scenario& s = c.s;
  const ScalarField f = mu == 1.0 ? c.f : c.f.dilated(mu);
  const ScalarField g = commutator_field(c, c.b, f, level);
  const double tol = tol_at(c.base_tol, level);
  const CubeRule rule = rule_at(s.n, level, tol);
  const auto scales = scale_ladder(s);
  CubeRule bound_rule = rule;
  bound_rule.tol = kBoundTol;
  LemmaSample out{0.0, 0.0, 0.0, symbol_norm(c, c.b, level)};
  const auto pts = sample_points(s);
  std::vector<double> lhs(pts.size()), bound(pts.size());
  parallel_for(pts.size(), c.threads, [&](std::size_t i) {
    const auto fam = cube_family(pts[i], scales);
    lhs[i] = frac_maximal(0.0, g, pts[i], fam, rule);
    bound[i] = lemma_la_bound(out.b_norm, s.exponents.beta, c.spec, f, pts[i], scales, bound_rule,
                              kBoundTol);
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.max_lhs = std::max(out.max_lhs, lhs[i]);
    out.max_bound = std::max(out.max_bound, bound[i]);
    out.c_emp = std::max(out.c_emp, safe_ratio(lhs[i], bound[i]));
  }
  return out;
}

double relative_change(double fine, double coarse) {
  if (fine == coarse) return 0.0;
  return std::abs(fine - coarse) / std::max(std::abs(fine), std::abs(coarse));
}

bool all_finite(const VerificationReport& r) {
  for (double v : {r.K_value, r.b_norm, r.f_norm, r.lhs_norm, r.ratio, r.max_dilation_ratio,
                   r.refinement_drift, r.linearity_error}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// Dilation stability: all zero, or all positive with max/min within the factor.
bool dilation_stable(const std::vector<std::pair<double, double>>& rows, double& spread) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& [mu, ratio] : rows) {
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (hi == 0.0) {
    spread = 1.0;
    return true;
  }
  spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return spread <= kStabilityFactor;
}

VerificationReport base_record(const Scenario& s) {
  VerificationReport r;
  r.scenario_id = s.id;
  r.theorem = theorem_label(s.theorem);
  r.n = s.n;
  r.kernel = s.kernel;
  r.field = s.field;
  r.b = s.b;
  r.f = s.f;
  r.exponents = flatten_exponents(s.theorem, s.exponents);
  return r;
}

Context make_context(const Scenario& s, const RunOptions& opts) {
  OperatorSpec spec(preset_kernel(s.kernel, s.n), preset_matrix_field(s.field, s.n), s.n);
  ScalarField b = s.b.empty() ? preset_symbol("constant(0)", s.n) : preset_symbol(s.b, s.n);
  return Context{s, std::move(spec), std::move(b), preset_testfn(s.f, s.n), opts.tol.value_or(s.tol),
                 opts.threads, opts.seed};
}

void run_pointwise(const Context& c, VerificationReport& r) {
  const Scenario& s = c.s;
  Point x(s.n);
  for (int i = 0; i < s.n; ++i) x.c[i] = s.x[i];
  OperatorOptions oo;
  oo.tol = std::min(c.base_tol, 1e-10);
  const double v = s.b.empty() ? hausdorff_apply(c.spec, c.f, x, oo)
                               : commutator_apply(c.spec, c.b, c.f, x, oo, CommutatorForm::Both);
  r.lhs_norm = v;
  r.ratio = v;
  r.max_dilation_ratio = v;
  r.refinement.push_back({0, v, 0.0, v});
  if (!std::isfinite(v)) {
    r.verdict = "inconclusive";
  } else if (s.expected) {
    const double err = std::abs(v - *s.expected);
    r.verdict = err <= 1e-6 * std::max(1.0, std::abs(*s.expected)) ? "pass" : "fail";
    if (r.verdict == "fail") r.diagnostics.push_back("value differs from expected by " + format_number(err));
  } else {
    r.verdict = "none";
  }
}

void run_lemma(const Context& c, VerificationReport& r) {
  const Scenario& s = c.s;
  const int finest = s.levels - 1;
  std::vector<LemmaSample> rows;
  for (int level = 0; level <= finest; ++level) {
    rows.push_back(lemma_sample(c, 1.0, level));
    r.refinement.push_back({level, rows.back().max_lhs, rows.back().max_bound, rows.back().c_emp});
  }
  const LemmaSample& top = rows.back();
  r.K_value = 1.0;
  r.b_norm = top.b_norm;
  r.f_norm = top.b_norm > 0.0 ? top.max_bound / top.b_norm : 0.0;
  r.lhs_norm = top.max_lhs;
  r.ratio = top.c_emp;
  r.dilation_ratios.emplace_back(1.0, top.c_emp);
  r.max_dilation_ratio = top.c_emp;
  r.refinement_drift = rows.size() >= 2 ? relative_change(top.c_emp, rows[rows.size() - 2].c_emp) : 0.0;
  if (!all_finite(r)) {
    r.verdict = "inconclusive";
    r.diagnostics.push_back("non-finite empirical constant");
    return;
  }
  bool ok = true;
  if (rows.size() >= 2) {
    const double a = top.c_emp, b = rows[rows.size() - 2].c_emp;
    if ((a == 0.0) != (b == 0.0) || (a > 0.0 && (a > 2.0 * b || b > 2.0 * a))) {
      ok = false;
      r.diagnostics.push_back("empirical constant not stable within a factor 2 under refinement");
    }
  }
  if (s.pinned_ratio && r.ratio > *s.pinned_ratio * kBudgetFactor) {
    ok = false;
    r.diagnostics.push_back("empirical constant exceeds budget " + format_number(*s.pinned_ratio * kBudgetFactor));
  }
  r.verdict = ok ? "pass" : "fail";
}

void run_theorem(const Context& c, VerificationReport& r) {
  const Scenario& s = c.s;
  double k_value = 1.0;
  bool suspect = false;
  if (const auto which = theorem_constant(s.theorem)) {
    ConstantSpec cs{*which, s.exponents, c.spec.kernel(), c.spec.field(), s.n};
    const ConstantResult k = k_constant(cs, 1e-10);
    k_value = k.value;
    suspect = k.divergence_suspect;
    if (suspect) r.diagnostics.push_back("constant flagged divergence-suspect");
  }
  r.K_value = k_value;

  const int finest = s.levels - 1;
  std::vector<Sample> rows;
  for (int level = 0; level <= finest; ++level) {
    rows.push_back(theorem_sample(c, k_value, c.b, 1.0, level));
    const Sample& x = rows.back();
    r.refinement.push_back({level, x.lhs, k_value * x.b_norm * x.f_norm, x.ratio});
  }
  const Sample& top = rows.back();
  r.b_norm = top.b_norm;
  r.f_norm = top.f_norm;
  r.lhs_norm = top.lhs;
  r.ratio = top.ratio;
  r.refinement_drift = rows.size() >= 2 ? relative_change(top.ratio, rows[rows.size() - 2].ratio) : 0.0;

  for (double mu : s.dilations) {
    const double ratio = mu == 1.0 ? top.ratio : theorem_sample(c, k_value, c.b, mu, finest).ratio;
    r.dilation_ratios.emplace_back(mu, ratio);
    r.max_dilation_ratio = std::max(r.max_dilation_ratio, ratio);
  }

  const Sample doubled = theorem_sample(c, k_value, c.b.scaled(2.0), 1.0, 0);
  r.linearity_error = relative_change(doubled.ratio, rows.front().ratio);

  if (!all_finite(r) || suspect) {
    r.verdict = "inconclusive";
    if (!all_finite(r)) r.diagnostics.push_back("non-finite quantity");
    return;
  }
  if (s.theorem == TheoremId::OpenCmoLp) {
    r.verdict = "none";
    return;
  }
  bool ok = true;
  double spread = 1.0;
  if (!dilation_stable(r.dilation_ratios, spread)) {
    ok = false;
    r.diagnostics.push_back("dilation spread " + format_number(spread) + " exceeds " +
                            format_number(kStabilityFactor));
  }
  if (r.refinement_drift >= kMaxDrift) {
    ok = false;
    r.diagnostics.push_back("refinement drift " + format_number(r.refinement_drift));
  }
  if (r.linearity_error > kLinearityTol) {
    ok = false;
    r.diagnostics.push_back("symbol linearity error " + format_number(r.linearity_error));
  }
  if (s.pinned_ratio && r.max_dilation_ratio > *s.pinned_ratio * kBudgetFactor) {
    ok = false;
    r.diagnostics.push_back("ratio exceeds budget " + format_number(*s.pinned_ratio * kBudgetFactor));
  }
  r.verdict = ok ? "pass" : "fail";
}


nlohmann::ordered_json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double json_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan" || s == "-nan") return kNaN;
  }
  throw InvalidInput("report field is not a number");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<double> default_dilations() {
  std::vector<double> out;
  for (int j = -4; j <= 4; ++j) out.push_back(std::ldexp(1.0, j));
  return out;
}

std::vector<Scenario> parse_scenarios(std::istream& in, const std::string& source) {
  static const std::regex header(R"(\[(defaults|scenario\.([A-Za-z0-9_.\-]+))\])");
  std::vector<Section> sections;
  Section defaults;
  bool in_defaults = false;
  Section* current = nullptr;
  std::set<std::string> names;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string here = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      std::smatch m;
      if (!std::regex_match(line, m, header)) throw InvalidInput(here + ": unknown section " + line);
      if (m[1] == "defaults") {
        if (!sections.empty() || in_defaults) throw InvalidInput(here + ": [defaults] must come first, once");
        in_defaults = true;
        defaults.line = lineno;
        current = &defaults;
      } else {
        const std::string name = m[2];
        if (!names.insert(name).second) throw InvalidInput(here + ": duplicate scenario '" + name + "'");
        Section sec = defaults;
        sec.name = name;
        sec.line = lineno;
        sections.push_back(sec);
        current = &sections.back();
      }
      continue;
    }
    if (!current) throw InvalidInput(here + ": key outside of a section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput(here + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) throw InvalidInput(here + ": unknown key '" + key + "'");
    if (value.empty()) throw InvalidInput(here + ": empty value for '" + key + "'");
    auto& slot = current->values[key];
    if (slot.second > (current == &defaults ? 0 : current->line)) {
      throw InvalidInput(here + ": duplicate key '" + key + "'");
    }
    slot = {value, lineno};
  }
  std::vector<Scenario> out;
  for (const Section& sec : sections) out.push_back(build_scenario(sec, source));
  return out;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  return parse_scenarios(in, path);
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> out = check_hypotheses(s.theorem, s.exponents, s.n);
  auto probe = [&](const std::string& what, auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      out.push_back(what + ": " + e.what());
    }
  };
  probe("kernel", [&] { preset_kernel(s.kernel, s.n); });
  probe("field", [&] { preset_matrix_field(s.field, s.n); });
  if (!s.b.empty()) probe("b", [&] { preset_symbol(s.b, s.n); });
  probe("f", [&] { preset_testfn(s.f, s.n); });
  if (out.empty()) {
    probe("operator", [&] {
      OperatorSpec(preset_kernel(s.kernel, s.n), preset_matrix_field(s.field, s.n), s.n);
    });
  }
  return out;
}

VerificationReport run_scenario(const Scenario& s, const RunOptions& opts) {
  VerificationReport r = base_record(s);
  const auto problems = validate_scenario(s);
  if (!problems.empty()) {
    r.verdict = "fail";
    for (const auto& p : problems) r.diagnostics.push_back("hypothesis violated: " + p);
    return r;
  }
  try {
    const Context c = make_context(s, opts);
    switch (s.theorem) {
      case TheoremId::Pointwise:
        run_pointwise(c, r);
        break;
      case TheoremId::L2_7:
        run_lemma(c, r);
        break;
      default:
        run_theorem(c, r);
        break;
    }
  } catch (const IntegrandError& e) {
    r.verdict = "inconclusive";
    r.diagnostics.push_back(e.what());
  } catch (const Error& e) {
    r.verdict = "fail";
    r.diagnostics.push_back(e.what());
  }
  return r;
}

std::vector<VerificationReport> run_scenarios(const std::vector<Scenario>& scenarios,
                                              const RunOptions& opts) {
  std::vector<VerificationReport> out(scenarios.size());
  RunOptions inner = opts;
  inner.threads = scenarios.size() > 1 ? 1 : opts.threads;
  parallel_for(scenarios.size(), scenarios.size() > 1 ? opts.threads : 1,
               [&](std::size_t i) { out[i] = run_scenario(scenarios[i], inner); });
  return out;
}

std::vector<RefinementRow> refine_study(const Scenario& s, int levels, const RunOptions& opts) {
  if (levels < 2) throw InvalidInput("refinement study needs at least 2 levels");
  const auto problems = validate_scenario(s);
  if (!problems.empty()) throw ConstraintViolation("scenario '" + s.id + "' violates " + problems.front());
  const Context c = make_context(s, opts);
  std::vector<RefinementRow> rows;
  if (s.theorem == TheoremId::Pointwise) {
    Point x(s.n);
    for (int i = 0; i < s.n; ++i) x.c[i] = s.x[i];
    for (int level = 0; level < levels; ++level) {
      OperatorOptions oo;
      oo.tol = tol_at(c.base_tol, level);
      const double v = s.b.empty() ? hausdorff_apply(c.spec, c.f, x, oo)
                                   : commutator_apply(c.spec, c.b, c.f, x, oo, CommutatorForm::Both);
      rows.push_back({level, v, 0.0, v});
    }
    return rows;
  }
  if (s.theorem == TheoremId::L2_7) {
    for (int level = 0; level < levels; ++level) {
      const LemmaSample x = lemma_sample(c, 1.0, level);
      rows.push_back({level, x.max_lhs, x.max_bound, x.c_emp});
    }
    return rows;
  }
  double k_value = 1.0;
  if (const auto which = theorem_constant(s.theorem)) {
    k_value = k_constant(ConstantSpec{*which, s.exponents, c.spec.kernel(), c.spec.field(), s.n}, 1e-10).value;
  }
  for (int level = 0; level < levels; ++level) {
    const Sample x = theorem_sample(c, k_value, c.b, 1.0, level);
    rows.push_back({level, x.lhs, k_value * x.b_norm * x.f_norm, x.ratio});
  }
  return rows;
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw InvalidInput("unknown report format '" + text + "' (csv or json)");
}

std::string flatten_exponents(TheoremId id, const ExponentBundle& e) {
  std::vector<std::pair<const char*, double>> kv;
  switch (id) {
    case TheoremId::T3_1:
      kv = {{"p", e.p}, {"q", e.q}, {"lambda", e.lambda}, {"beta", e.beta}};
      break;
    case TheoremId::T3_2:
      kv = {{"p", e.p}, {"q", e.q}, {"beta", e.beta}};
      break;
    case TheoremId::T3_3:
      kv = {{"p1", e.p1}, {"p2", e.p2}, {"q1", e.q1}, {"q2", e.q2},
            {"alpha", e.alpha}, {"lambda", e.lambda}, {"beta", e.beta}};
      break;
    case TheoremId::T3_4:
      kv = {{"p1", e.p1}, {"p2", e.p2}, {"q1", e.q1}, {"q2", e.q2}, {"alpha", e.alpha}, {"beta", e.beta}};
      break;
    case TheoremId::T3_5:
      kv = {{"p", e.p}, {"beta", e.beta}};
      break;
    case TheoremId::T4_1:
      kv = {{"p", e.p}, {"q", e.q}, {"q1", e.q1}, {"q2", e.q2},
            {"alpha1", e.alpha1}, {"alpha2", e.alpha2}, {"lambda", e.lambda}};
      break;
    case TheoremId::T4_2:
      kv = {{"p", e.p}, {"q", e.q}, {"q1", e.q1}, {"q2", e.q2}, {"alpha1", e.alpha1}, {"alpha2", e.alpha2}};
      break;
    case TheoremId::L2_7:
      kv = {{"beta", e.beta}};
      break;
    case TheoremId::OpenCmoLp:
      kv = {{"p", e.p}, {"q", e.q}};
      break;
    case TheoremId::Pointwise:
      break;
  }
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ';';
    out += std::string(k) + "=" + format_number(v);
  }
  return out;
}

std::string report_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "scenario_id,theorem,n,kernel,field,b,f,exponents,K_value,b_norm,f_norm,lhs_norm,ratio,"
        "max_dilation_ratio,refinement_drift,verdict\n";
  for (const auto& r : reports) {
    os << csv_field(r.scenario_id) << ',' << csv_field(r.theorem) << ',' << r.n << ','
       << csv_field(r.kernel) << ',' << csv_field(r.field) << ',' << csv_field(r.b) << ','
       << csv_field(r.f) << ',' << csv_field(r.exponents) << ',' << format_number(r.K_value) << ','
       << format_number(r.b_norm) << ',' << format_number(r.f_norm) << ','
       << format_number(r.lhs_norm) << ',' << format_number(r.ratio) << ','
       << format_number(r.max_dilation_ratio) << ',' << format_number(r.refinement_drift) << ','
       << csv_field(r.verdict) << '\n';
  }
  return os.str();
}

std::string report_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["scenario_id"] = r.scenario_id;
    j["theorem"] = r.theorem;
    j["n"] = r.n;
    j["kernel"] = r.kernel;
    j["field"] = r.field;
    j["b"] = r.b;
    j["f"] = r.f;
    j["exponents"] = r.exponents;
    j["K_value"] = number_json(r.K_value);
    j["b_norm"] = number_json(r.b_norm);
    j["f_norm"] = number_json(r.f_norm);
    j["lhs_norm"] = number_json(r.lhs_norm);
    j["ratio"] = number_json(r.ratio);
    j["max_dilation_ratio"] = number_json(r.max_dilation_ratio);
    j["refinement_drift"] = number_json(r.refinement_drift);
    j["verdict"] = r.verdict;
    nlohmann::ordered_json dil = nlohmann::ordered_json::array();
    for (const auto& [mu, ratio] : r.dilation_ratios) dil.push_back({number_json(mu), number_json(ratio)});
    j["dilation_ratios"] = dil;
    nlohmann::ordered_json ref = nlohmann::ordered_json::array();
    for (const auto& row : r.refinement) {
      ref.push_back({{"level", row.level},
                     {"lhs", number_json(row.lhs)},
                     {"rhs", number_json(row.rhs)},
                     {"ratio", number_json(row.ratio)}});
    }
    j["refinement"] = ref;
    j["linearity_error"] = number_json(r.linearity_error);
    j["diagnostics"] = r.diagnostics;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::vector<VerificationReport> parse_report_json(const std::string& text) {
  std::vector<VerificationReport> out;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw InvalidInput("report JSON must be an array");
    for (const auto& j : arr) {
      VerificationReport r;
      r.scenario_id = j.at("scenario_id").get<std::string>();
      r.theorem = j.at("theorem").get<std::string>();
      r.n = j.at("n").get<int>();
      r.kernel = j.at("kernel").get<std::string>();
      r.field = j.at("field").get<std::string>();
      r.b = j.at("b").get<std::string>();
      r.f = j.at("f").get<std::string>();
      r.exponents = j.at("exponents").get<std::string>();
      r.K_value = json_number(j.at("K_value"));
      r.b_norm = json_number(j.at("b_norm"));
      r.f_norm = json_number(j.at("f_norm"));
      r.lhs_norm = json_number(j.at("lhs_norm"));
      r.ratio = json_number(j.at("ratio"));
      r.max_dilation_ratio = json_number(j.at("max_dilation_ratio"));
      r.refinement_drift = json_number(j.at("refinement_drift"));
      r.verdict = j.at("verdict").get<std::string>();
      for (const auto& d : j.at("dilation_ratios")) {
        r.dilation_ratios.emplace_back(json_number(d.at(0)), json_number(d.at(1)));
      }
      for (const auto& row : j.at("refinement")) {
        r.refinement.push_back({row.at("level").get<int>(), json_number(row.at("lhs")),
                                json_number(row.at("rhs")), json_number(row.at("ratio"))});
      }
      r.linearity_error = json_number(j.at("linearity_error"));
      r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report JSON: ") + e.what());
  }
  return out;
}

void emit_report(const std::vector<VerificationReport>& reports, ReportFormat format,
                 const std::string& path) {
  if (reports.empty()) throw InvalidInput("no reports to emit");
  const std::string text = format == ReportFormat::Csv ? report_csv(reports) : report_json(reports);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report to '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing report to '" + path + "'");
}

std::vector<VerificationReport> read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read report '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_report_json(ss.str());
}

int exit_code(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == "fail") return 1;
    if (r.verdict == "inconclusive") inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

}  // namespace hausdorff
