#include "hausdorff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>
#include <sstream>
#include <vector>

#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kZeroOctaves = 30;
constexpr int kMaxOctaves = 80;

// Kronrod 15-point abscissae (positive half, descending) and weights; the
// odd-indexed entries are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value, error, abs_value;
  std::size_t order;  // creation order, for deterministic tie-breaking
};

struct PanelLess {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
  }
};

using DualIntegrand = std::function<std::pair<double, double>(double)>;

std::pair<double, double> checked(const DualIntegrand& g, double r) {
  const auto v = g(r);
  if (!std::isfinite(v.first) || !std::isfinite(v.second)) {
    std::ostringstream os;
    os << "non-finite integrand value at r = " << r;
    throw IntegrandError(os.str(), r);
  }
  return v;
}

// The second channel of g is a magnitude (|g| for plain integrands, the sum
// of |terms| when g is itself a cancelling sum) used for the error floor.
Panel gk15(const DualIntegrand& g, double a, double b, std::size_t order) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto [fc, mc] = checked(g, center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = kWgk[7] * mc;
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const auto [f1, m1] = checked(g, center - dx);
    const auto [f2, m2] = checked(g, center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (m1 + m2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  Panel p{a, b, resk * half, 0.0, resabs * std::abs(half), order};
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (p.abs_value > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * p.abs_value);
  }
  p.error = err;
  return p;
}

struct DualResult {
  QuadratureResult result;
  double magnitude = 0.0;
};

DualResult integrate_dual(const DualIntegrand& g, double r_lo, double r_hi,
                          const RadialOptions& opts);

}  // namespace

namespace {

DualResult integrate_dual(const DualIntegrand& g, double r_lo, double r_hi,
                          const RadialOptions& opts) {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi)) {
    throw InvalidInput("integrate_radial requires 0 <= r_lo < r_hi < inf");
  }
  if (!(opts.tol > 0.0)) throw InvalidInput("quadrature tolerance must be positive");

  std::vector<double> cuts{r_lo};
  {
    std::vector<double> bp(opts.breakpoints.begin(), opts.breakpoints.end());
    std::sort(bp.begin(), bp.end());
    for (double x : bp) {
      if (x > cuts.back() && x < r_hi) cuts.push_back(x);
    }
    cuts.push_back(r_hi);
  }
  if (opts.dyadic_split) {
    // Wide segments start out split at powers of two so that features far
    // from every Kronrod node of the first panel are not missed.
    std::vector<double> split{cuts.front()};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i], b = cuts[i + 1];
      const int top = std::ilogb(b);
      const int bottom = a > 0.0 ? std::ilogb(a) + 1 : top - kZeroOctaves;
      if (a == 0.0 || b > 4.0 * a) {
        for (int j = std::max(bottom, top - kMaxOctaves); j <= top; ++j) {
          const double c = std::ldexp(1.0, j);
          if (c > split.back() && c < b) split.push_back(c);
        }
      }
      split.push_back(b);
    }
    cuts = std::move(split);
  }

  std::priority_queue<Panel, std::vector<Panel>, PanelLess> heap;
  std::size_t order = 0;
  double value = 0.0, error = 0.0, abs_value = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(g, cuts[i], cuts[i + 1], order++);
    value += p.value;
    error += p.error;
    abs_value += p.abs_value;
    heap.push(p);
  }
  const std::size_t budget = std::max(opts.max_panels, cuts.size());
  bool converged = true;
  while (error > opts.tol * std::max(std::abs(value), 1e-3 * abs_value)) {
    if (heap.size() >= budget) {
      converged = false;
      break;
    }
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      converged = false;
      break;
    }
    heap.pop();
    Panel left = gk15(g, worst.a, mid, order++);
    Panel right = gk15(g, mid, worst.b, order++);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in panel order so the result does not depend on the running sums.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult out;
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  out.nodes_used = panels.size() * 15;
  out.converged = converged;
  double magnitude = 0.0;
  for (const Panel& p : panels) magnitude += p.abs_value;
  return {out, magnitude};
}

}  // namespace

QuadratureResult integrate_radial(const RadialIntegrand& g, double r_lo, double r_hi,
                                  const RadialOptions& opts) {
  auto dual = [&g](double r) {
    const double v = g(r);
    return std::pair<double, double>{v, std::abs(v)};
  };
  return integrate_dual(dual, r_lo, r_hi, opts).result;
}

QuadratureResult integrate_radial(const RadialIntegrand& g, double r_lo, double r_hi,
                                  double tol) {
  RadialOptions opts;
  opts.tol = tol;
  return integrate_radial(g, r_lo, r_hi, opts);
}

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[count - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[count - 1 - i] = w;
  }
}

int default_angular_order(int n) { return n == 2 ? 64 : (n == 3 ? 8 : 1); }

AngularRule angular_rule(int n, int order) {
  AngularRule rule;
  if (n == 1) {
    rule.nodes = {Point(1, {1.0}), Point(1, {-1.0})};
    rule.weights = {1.0, 1.0};
  } else if (n == 2) {
    const int m = std::max(order, 1);
    for (int j = 0; j < m; ++j) {
      const double t = 2.0 * kPi * (j + 0.5) / m;
      rule.nodes.emplace_back(2, std::initializer_list<double>{std::cos(t), std::sin(t)});
      rule.weights.push_back(2.0 * kPi / m);
    }
  } else if (n == 3) {
    const int m = std::max(order, 4);
    std::vector<double> z, wz;
    gauss_legendre(m, z, wz);
    const int az = 2 * m;
    for (int i = 0; i < m; ++i) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
      for (int j = 0; j < az; ++j) {
        const double t = 2.0 * kPi * (j + 0.5) / az;
        rule.nodes.emplace_back(3, std::initializer_list<double>{s * std::cos(t), s * std::sin(t), z[i]});
        rule.weights.push_back(wz[i] * 2.0 * kPi / az);
      }
    }
  } else {
    throw InvalidInput("angular rules exist for n = 1, 2, 3");
  }
  return rule;
}

QuadratureResult integrate_annulus(const PointIntegrand& g, int n, double r_lo,
                                   double r_hi, const AnnulusOptions& opts) {
  if (n < 1 || n > 3) throw InvalidInput("integrate_annulus requires n in {1,2,3}");
  RadialOptions ropts;
  ropts.tol = opts.tol;
  ropts.breakpoints = opts.breakpoints;
  ropts.max_panels = opts.max_panels;

  auto at_order = [&](int order) {
    const AngularRule rule = angular_rule(n, order);
    auto h = [&](double r) {
      double s = 0.0, m = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = rule.weights[i] * g(rule.nodes[i].scaled(r));
        s += v;
        m += std::abs(v);
      }
      const double jac = n == 1 ? 1.0 : std::pow(r, n - 1);
      return std::pair<double, double>{s * jac, m * jac};
    };
    DualResult res = integrate_dual(h, r_lo, r_hi, ropts);
    res.result.nodes_used *= rule.nodes.size();
    return res;
  };

  int order = opts.angular_order > 0 ? opts.angular_order : default_angular_order(n);
  DualResult first = at_order(order);
  QuadratureResult cur = first.result;
  if (n == 1 || !opts.adaptive_angular) return cur;

  const double floor = 1e-3 * first.magnitude;
  const int cap = n == 2 ? 1024 : 64;
  std::size_t nodes = cur.nodes_used;
  while (order < cap) {
    order *= 2;
    QuadratureResult next = at_order(order).result;
    nodes += next.nodes_used;
    const double diff = std::abs(next.value - cur.value);
    cur = next;
    cur.error_estimate += diff;
    if (diff <= opts.tol * std::max(std::abs(cur.value), floor)) break;
    if (order >= cap) cur.converged = false;
  }
  cur.nodes_used = nodes;
  return cur;
}

}  // namespace hausdorff
