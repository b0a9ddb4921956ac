#include "hausdorff/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <sstream>

#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

// Preset grammar: name | name(arg, ...), arg = number | preset.
struct PresetExpr {
  std::string name;
  struct Arg {
    bool is_number = true;
    double number = 0.0;
    std::shared_ptr<PresetExpr> expr;
  };
  std::vector<Arg> args;
};

class PresetParser {
 public:
  explicit PresetParser(const std::string& text) : s_(text) {}

  PresetExpr parse() {
    PresetExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw CatalogMiss("cannot parse preset '" + s_ + "': " + why);
  }
  PresetExpr expr() {
    skip_ws();
    PresetExpr e;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' || s_[pos_] == '_')) {
      e.name += s_[pos_++];
    }
    if (e.name.empty()) fail("expected a preset name");
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return e;
      }
      while (true) {
        e.args.push_back(arg());
        skip_ws();
        if (pos_ >= s_.size()) fail("unterminated argument list");
        if (s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    return e;
  }
  PresetExpr::Arg arg() {
    skip_ws();
    PresetExpr::Arg a;
    const char c = pos_ < s_.size() ? s_[pos_] : '\0';
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      a.number = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
        fail("bad number");
      }
      return a;
    }
    a.is_number = false;
    a.expr = std::make_shared<PresetExpr>(expr());
    return a;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

double num(const PresetExpr& e, std::size_t i) {
  if (i >= e.args.size() || !e.args[i].is_number) {
    throw CatalogMiss("preset '" + e.name + "' expects a numeric argument at position " +
                      std::to_string(i + 1));
  }
  return e.args[i].number;
}

void expect_args(const PresetExpr& e, std::size_t count) {
  if (e.args.size() != count) {
    throw CatalogMiss("preset '" + e.name + "' expects " + std::to_string(count) + " argument(s)");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

constexpr double kPi = 3.14159265358979323846;

double smooth_bump(double r, double a, double b) {
  if (r <= a || r >= b) return 0.0;
  const double t = (2.0 * r - a - b) / (b - a);
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

KernelSpec build_kernel(const PresetExpr& e, int n) {
  KernelSpec k;
  if (e.name == "annulus") {
    expect_args(e, 2);
    const double a = num(e, 0), b = num(e, 1);
    require(a > 0.0 && b > a, "annulus(a,b) requires 0 < a < b");
    k.profile = [a, b](double r) { return (r >= a && r <= b) ? 1.0 : 0.0; };
    k.r_lo = a;
    k.r_hi = b;
    k.breakpoints = {a, b};
  } else if (e.name == "ball") {
    expect_args(e, 1);
    const double b = num(e, 0);
    require(b > 0.0, "ball(b) requires b > 0");
    k.profile = [b](double r) { return r <= b ? 1.0 : 0.0; };
    k.r_lo = 0.0;
    k.r_hi = b;
    k.breakpoints = {b};
    k.integrability = "L1_loc";
  } else if (e.name == "interval") {
    expect_args(e, 2);
    const double a = num(e, 0), b = num(e, 1);
    require(n == 1, "interval(a,b) kernels are one-dimensional");
    require(a >= 0.0 && b > a, "interval(a,b) requires 0 <= a < b");
    k.profile = [a, b](double r) { return (r > a && r < b) ? 1.0 : 0.0; };
    k.r_lo = a;
    k.r_hi = b;
    k.breakpoints = {a, b};
    k.one_sided = true;
    if (a == 0.0) k.integrability = "L1_loc";
  } else if (e.name == "power") {
    expect_args(e, 2);
    const double gamma = num(e, 0);
    if (e.args[1].is_number) throw CatalogMiss("power(gamma, base) needs a base kernel");
    KernelSpec base = build_kernel(*e.args[1].expr, n);
    auto prof = base.profile;
    k = base;
    k.profile = [gamma, prof](double r) {
      const double v = prof(r);
      return v == 0.0 ? 0.0 : v * std::pow(r, -gamma);
    };
    if (base.r_lo == 0.0) k.integrability = "L1_loc";
  } else if (e.name == "bump") {
    expect_args(e, 2);
    const double a = num(e, 0), b = num(e, 1);
    require(a > 0.0 && b > a, "bump(a,b) requires 0 < a < b");
    k.profile = [a, b](double r) { return smooth_bump(r, a, b); };
    k.r_lo = a;
    k.r_hi = b;
  } else if (e.name == "zero") {
    expect_args(e, 0);
    k.profile = [](double) { return 0.0; };
    k.r_lo = 1.0;
    k.r_hi = 2.0;
  } else {
    throw CatalogMiss("unknown kernel preset '" + e.name + "'; valid: " + join(kernel_preset_names()));
  }
  return k;
}

std::string canonical(const std::string& text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Largest singular value of [[1,s],[0,1]].
double shear_norm(double s) { return 0.5 * (std::abs(s) + std::sqrt(s * s + 4.0)); }

}  // namespace

double KernelSpec::operator()(const Point& y) const {
  if (one_sided && y.c[0] <= 0.0) return 0.0;
  return profile(y.norm());
}

double KernelSpec::angular_mass(double r, int n) const {
  const double p = profile(r);
  if (p == 0.0) return 0.0;
  return one_sided ? p : p * sphere_area(n);
}

double KernelSpec::angular_abs_mass(double r, int n) const { return std::abs(angular_mass(r, n)); }

Matrix MatrixField::at_radius(double r) const {
  if (kind == FieldKind::Radial) return Matrix::scalar(n, 1.0 / r);
  return constant_matrix;
}

Point MatrixField::apply(double r, const Point& x) const {
  if (kind == FieldKind::Radial) return x.scaled(1.0 / r);
  return constant_matrix.apply(x);
}

std::vector<double> MatrixField::crossing_radii(double x_norm, std::span<const double> radii) const {
  std::vector<double> out;
  if (kind != FieldKind::Radial) return out;
  for (double rho : radii) {
    if (rho > 0.0 && std::isfinite(rho)) out.push_back(x_norm / rho);
  }
  return out;
}

ScalarField ScalarField::scaled(double c) const {
  ScalarField out = *this;
  auto f = fn;
  out.fn = [f, c](const Point& x) { return c * f(x); };
  out.name = name + "*" + std::to_string(c);
  out.analytic.clear();
  for (const auto& [key, v] : analytic) {
    if (key != "measure") out.analytic[key] = std::abs(c) * v;
  }
  if (c == 0.0) {
    out.support_lo = 0.0;
    out.support_hi = 0.0;
  }
  return out;
}

ScalarField ScalarField::dilated(double mu) const {
  if (!(mu > 0.0)) throw InvalidInput("dilation factor must be positive");
  ScalarField out = *this;
  auto f = fn;
  out.fn = [f, mu](const Point& x) { return f(x.scaled(mu)); };
  out.name = name + "@" + std::to_string(mu);
  for (double& b : out.breakpoints) b /= mu;
  for (double& r : out.radial_nodes) r /= mu;
  out.support_lo /= mu;
  out.support_hi /= mu;
  out.analytic.clear();
  return out;
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  ScalarField out;
  auto fa = a.fn, fb = b.fn;
  out.name = a.name + "*" + b.name;
  out.fn = [fa, fb](const Point& x) {
    const double u = fb(x);
    return u == 0.0 ? 0.0 : fa(x) * u;
  };
  out.breakpoints = a.breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
  out.support_lo = std::max(a.support_lo, b.support_lo);
  out.support_hi = std::min(a.support_hi, b.support_hi);
  out.radial = a.radial && b.radial;
  out.regular_at_origin = a.regular_at_origin && b.regular_at_origin;
  out.tags.bounded = a.tags.bounded && b.tags.bounded;
  out.tags.compact_support = a.tags.compact_support || b.tags.compact_support;
  return out;
}

ScalarField sum(const ScalarField& a, const ScalarField& b) {
  ScalarField out;
  auto fa = a.fn, fb = b.fn;
  out.name = a.name + "+" + b.name;
  out.fn = [fa, fb](const Point& x) { return fa(x) + fb(x); };
  out.breakpoints = a.breakpoints;
  out.breakpoints.insert(out.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
  out.support_lo = std::min(a.support_lo, b.support_lo);
  out.support_hi = std::max(a.support_hi, b.support_hi);
  out.radial = a.radial && b.radial;
  out.regular_at_origin = a.regular_at_origin && b.regular_at_origin;
  out.tags.bounded = a.tags.bounded && b.tags.bounded;
  out.tags.compact_support = a.tags.compact_support && b.tags.compact_support;
  return out;
}

KernelSpec preset_kernel(const std::string& name, int n) {
  require(n >= 1 && n <= 3, "dimension must be 1, 2 or 3");
  KernelSpec k = build_kernel(PresetParser(name).parse(), n);
  k.name = canonical(name);
  return k;
}

MatrixField preset_matrix_field(const std::string& name, int n) {
  require(n >= 1 && n <= 3, "dimension must be 1, 2 or 3");
  const PresetExpr e = PresetParser(name).parse();
  MatrixField f;
  f.name = canonical(name);
  f.n = n;
  f.constant_matrix = Matrix::identity(n);
  if (e.name == "radial") {
    expect_args(e, 0);
    f.kind = FieldKind::Radial;
    f.norm = [](double r) { return 1.0 / r; };
    f.inv_norm = [](double r) { return r; };
    f.det_inv = [n](double r) { return std::pow(r, n); };
  } else if (e.name == "dilation") {
    expect_args(e, 1);
    const double c = num(e, 0);
    require(c != 0.0 && std::isfinite(c), "dilation(c) requires c != 0");
    f.constant_matrix = Matrix::scalar(n, c);
    f.norm = [c](double) { return std::abs(c); };
    f.inv_norm = [c](double) { return 1.0 / std::abs(c); };
    f.det_inv = [c, n](double) { return std::pow(std::abs(c), -n); };
  } else if (e.name == "shear") {
    expect_args(e, 1);
    require(n >= 2, "shear(s) needs n >= 2");
    const double s = num(e, 0);
    f.constant_matrix(0, 1) = s;
    const double nrm = shear_norm(s);
    f.norm = [nrm](double) { return nrm; };
    f.inv_norm = [nrm](double) { return nrm; };
    f.det_inv = [](double) { return 1.0; };
  } else if (e.name == "rotation-scale") {
    expect_args(e, 2);
    require(n >= 2, "rotation-scale(c,theta) needs n >= 2");
    const double c = num(e, 0), th = num(e, 1);
    require(c != 0.0, "rotation-scale(c,theta) requires c != 0");
    Matrix m = Matrix::identity(n);
    m(0, 0) = std::cos(th);
    m(0, 1) = -std::sin(th);
    m(1, 0) = std::sin(th);
    m(1, 1) = std::cos(th);
    f.constant_matrix = m.scaled(c);
    f.norm = [c](double) { return std::abs(c); };
    f.inv_norm = [c](double) { return 1.0 / std::abs(c); };
    f.det_inv = [c, n](double) { return std::pow(std::abs(c), -n); };
  } else {
    throw CatalogMiss("unknown matrix-field preset '" + e.name + "'; valid: " +
                      join(field_preset_names()));
  }
  return f;
}

ScalarField preset_symbol(const std::string& name, int n) {
  require(n >= 1 && n <= 3, "dimension must be 1, 2 or 3");
  const PresetExpr e = PresetParser(name).parse();
  ScalarField s;
  s.name = canonical(name);
  if (e.name == "power-beta") {
    expect_args(e, 1);
    const double beta = num(e, 0);
    require(beta > 0.0 && beta < 1.0, "power-beta(beta) requires 0 < beta < 1");
    s.fn = [beta](const Point& x) {
      const double r = x.norm();
      return r == 0.0 ? 0.0 : std::pow(r, beta);
    };
    s.radial = true;
    s.tags.bounded = false;
    s.tags.power_law = true;
    s.tags.lipschitz_beta = beta;
    s.analytic["lipschitz"] = 1.0;
  } else if (e.name == "halfspace") {
    expect_args(e, 0);
    s.fn = [](const Point& x) { return x.c[0] > 0.0 ? 1.0 : 0.0; };
    s.breakpoints = {0.0};
    s.tags.cmo = true;
    s.analytic["cmo"] = 0.5;
  } else if (e.name == "log-bump") {
    expect_args(e, 0);
    s.fn = [](const Point& x) {
      const double r = x.norm();
      return r < 1.0 ? -std::log(r) : 0.0;
    };
    s.breakpoints = {1.0};
    s.radial = true;
    s.regular_at_origin = false;
    s.tags.bounded = false;
    s.tags.cmo = true;
  } else if (e.name == "log-abs") {
    expect_args(e, 0);
    s.fn = [](const Point& x) { return std::log(x.norm()); };
    s.radial = true;
    s.regular_at_origin = false;
    s.tags.bounded = false;
    s.tags.cmo = true;
    // Mean oscillation over B(0,r) is scale invariant; its q = 2 value is 1/n.
    s.analytic["cmo2"] = 1.0 / n;
  } else if (e.name == "constant") {
    expect_args(e, 1);
    const double c = num(e, 0);
    s.fn = [c](const Point&) { return c; };
    s.radial = true;
    s.tags.cmo = true;
    s.tags.constant = true;
    s.analytic["lipschitz"] = 0.0;
    s.analytic["cmo"] = 0.0;
  } else {
    throw CatalogMiss("unknown symbol preset '" + e.name + "'; valid: " + join(symbol_preset_names()));
  }
  return s;
}

ScalarField preset_testfn(const std::string& name, int n, const TestfnOptions& opts) {
  require(n >= 1 && n <= 3, "dimension must be 1, 2 or 3");
  const PresetExpr e = PresetParser(name).parse();
  ScalarField f;
  f.name = canonical(name);
  if (e.name == "shell-indicator") {
    expect_args(e, 1);
    const double kd = num(e, 0);
    require(kd == std::floor(kd), "shell-indicator(k) needs an integer k");
    const int k = static_cast<int>(kd);
    const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
    f.fn = [lo, hi](const Point& x) {
      const double r = x.norm();
      return (r >= lo && r < hi) ? 1.0 : 0.0;
    };
    f.breakpoints = {lo, hi};
    f.support_lo = lo;
    f.support_hi = hi;
    f.radial = true;
    f.tags.compact_support = true;
    f.analytic["measure"] = ball_volume(n) * (std::pow(hi, n) - std::pow(lo, n));
  } else if (e.name == "ball-indicator") {
    expect_args(e, 1);
    const double r0 = num(e, 0);
    require(r0 > 0.0, "ball-indicator(r) requires r > 0");
    f.fn = [r0](const Point& x) { return x.norm() < r0 ? 1.0 : 0.0; };
    f.breakpoints = {r0};
    f.support_hi = r0;
    f.radial = true;
    f.tags.compact_support = true;
    f.analytic["measure"] = ball_volume(n) * std::pow(r0, n);
  } else if (e.name == "interval-indicator") {
    expect_args(e, 2);
    require(n == 1, "interval-indicator(a,b) is one-dimensional");
    const double a = num(e, 0), b = num(e, 1);
    require(b > a, "interval-indicator(a,b) requires a < b");
    f.fn = [a, b](const Point& x) { return (x.c[0] > a && x.c[0] < b) ? 1.0 : 0.0; };
    f.breakpoints = {std::abs(a), std::abs(b)};
    f.support_lo = (a < 0.0 && b > 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
    f.support_hi = std::max(std::abs(a), std::abs(b));
    f.tags.compact_support = true;
    f.analytic["measure"] = b - a;
  } else if (e.name == "power-decay") {
    if (e.args.size() != 1 && e.args.size() != 2) {
      throw CatalogMiss("preset 'power-decay' expects 1 or 2 arguments");
    }
    const double sigma = num(e, 0);
    const double eps = e.args.size() == 2 ? num(e, 1) : opts.truncation;
    require(sigma > 0.0 && eps > 0.0, "power-decay(sigma, eps) requires sigma, eps > 0");
    f.fn = [sigma, eps](const Point& x) {
      const double r = x.norm();
      return r >= eps ? std::pow(r, -sigma) : 0.0;
    };
    f.breakpoints = {eps};
    f.support_lo = eps;
    f.radial = true;
    f.tags.power_law = true;
  } else if (e.name == "gaussian-bump") {
    expect_args(e, 0);
    f.fn = [](const Point& x) {
      const double r = x.norm();
      return std::exp(-r * r);
    };
    f.radial = true;
    f.analytic["integral"] = std::pow(kPi, 0.5 * n);
  } else if (e.name == "smooth-bump") {
    expect_args(e, 2);
    const double a = num(e, 0), b = num(e, 1);
    require(a >= 0.0 && b > a, "smooth-bump(a,b) requires 0 <= a < b");
    f.fn = [a, b](const Point& x) { return smooth_bump(x.norm(), a, b); };
    f.support_lo = a;
    f.support_hi = b;
    f.radial = true;
    f.tags.compact_support = true;
  } else if (e.name == "constant") {
    expect_args(e, 1);
    const double c = num(e, 0);
    f.fn = [c](const Point&) { return c; };
    f.radial = true;
  } else if (e.name == "zero") {
    expect_args(e, 0);
    f.fn = [](const Point&) { return 0.0; };
    f.radial = true;
    f.support_hi = 0.0;
    f.tags.compact_support = true;
  } else {
    throw CatalogMiss("unknown test-function preset '" + e.name + "'; valid: " +
                      join(testfn_preset_names()));
  }
  return f;
}

std::vector<std::string> kernel_preset_names() {
  return {"annulus(a,b)", "ball(b)", "interval(a,b)", "power(gamma,<kernel>)", "bump(a,b)", "zero"};
}
std::vector<std::string> field_preset_names() {
  return {"radial", "dilation(c)", "shear(s)", "rotation-scale(c,theta)"};
}
std::vector<std::string> symbol_preset_names() {
  return {"power-beta(beta)", "halfspace", "log-bump", "log-abs", "constant(c)"};
}
std::vector<std::string> testfn_preset_names() {
  return {"shell-indicator(k)", "ball-indicator(r)", "interval-indicator(a,b)",
          "power-decay(sigma[,eps])", "gaussian-bump", "smooth-bump(a,b)", "constant(c)", "zero"};
}

}  // namespace hausdorff
