#include "hausdorff/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "hausdorff/constants.hpp"
#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

void check_family(const Point& x, std::span<const Cube> family) {
  if (family.empty()) throw InvalidInput("cube family must not be empty");
  for (const Cube& q : family) {
    if (q.center.n != x.n) throw InvalidInput("cube dimension does not match point");
    if (!q.contains(x)) throw InvalidInput("every cube of the family must contain x");
  }
}

double line_integral(const ScalarField& f, double a, double b, const CubeRule& rule,
                     const std::function<double(double)>& transform) {
  std::vector<double> cuts{0.0};
  auto add = [&](double z) {
    if (z > a && z < b) cuts.push_back(z - a);
  };
  add(0.0);
  for (double rho : f.breakpoints) {
    add(rho);
    add(-rho);
  }
  for (double rho : f.radial_nodes) {
    add(rho);
    add(-rho);
  }
  if (f.support_lo > 0.0) {
    add(f.support_lo);
    add(-f.support_lo);
  }
  if (f.support_hi < kInf) {
    add(f.support_hi);
    add(-f.support_hi);
  }
  auto g = [&](double t) {
    Point z(1);
    z.c[0] = a + t;
    return transform(f(z));
  };
  RadialOptions opts;
  opts.tol = rule.tol;
  opts.breakpoints = cuts;
  opts.dyadic_split = false;
  return integrate_radial(g, 0.0, b - a, opts).value;
}

double midpoint_integral(const ScalarField& f, const Cube& q, const CubeRule& rule,
                         const std::function<double(double)>& transform) {
  const int n = q.center.n;
  const int m = std::max(1, rule.nodes_per_axis);
  const double h = q.side / m;
  double total = 0.0;
  Point z(n);
  if (n == 2) {
    for (int i = 0; i < m; ++i) {
      z.c[0] = q.center.c[0] - 0.5 * q.side + (i + 0.5) * h;
      double row = 0.0;
      for (int j = 0; j < m; ++j) {
        z.c[1] = q.center.c[1] - 0.5 * q.side + (j + 0.5) * h;
        row += transform(f(z));
      }
      total += row;
    }
  } else {
    for (int i = 0; i < m; ++i) {
      z.c[0] = q.center.c[0] - 0.5 * q.side + (i + 0.5) * h;
      for (int j = 0; j < m; ++j) {
        z.c[1] = q.center.c[1] - 0.5 * q.side + (j + 0.5) * h;
        double row = 0.0;
        for (int k = 0; k < m; ++k) {
          z.c[2] = q.center.c[2] - 0.5 * q.side + (k + 0.5) * h;
          row += transform(f(z));
        }
        total += row;
      }
    }
  }
  return total * std::pow(h, n);
}

// Nearest and farthest distance from the origin to the cube decide whether
// the cube misses the support of f.
bool cube_misses_support(const ScalarField& f, const Cube& q) {
  double near = 0.0, far = 0.0;
  for (int i = 0; i < q.center.n; ++i) {
    const double lo = q.center.c[i] - 0.5 * q.side, hi = q.center.c[i] + 0.5 * q.side;
    const double d = (lo > 0.0) ? lo : (hi < 0.0 ? -hi : 0.0);
    near += d * d;
    const double e = std::max(std::abs(lo), std::abs(hi));
    far += e * e;
  }
  return std::sqrt(near) >= f.support_hi || std::sqrt(far) <= f.support_lo;
}

}  // namespace

double cube_integral(const ScalarField& f, const Cube& q, const CubeRule& rule,
                     const std::function<double(double)>& transform) {
  if (!(q.side > 0.0)) throw InvalidInput("cube side must be positive");
  if (cube_misses_support(f, q)) return transform(0.0) * q.volume();
  if (q.center.n == 1) {
    return line_integral(f, q.center.c[0] - 0.5 * q.side, q.center.c[0] + 0.5 * q.side, rule,
                         transform);
  }
  return midpoint_integral(f, q, rule, transform);
}

double frac_maximal(double beta, const ScalarField& f, const Point& x,
                    std::span<const Cube> family, const CubeRule& rule) {
  if (!(beta >= 0.0) || !(beta < x.n)) throw InvalidInput("fractional order needs 0 <= beta < n");
  check_family(x, family);
  const int n = x.n;
  auto absval = [](double v) { return std::abs(v); };
  double best = 0.0;
  for (const Cube& q : family) {
    const double integral = cube_integral(f, q, rule, absval);
    best = std::max(best, std::pow(q.volume(), beta / n - 1.0) * integral);
  }
  return best;
}

double sharp_oscillation(const ScalarField& f, double beta, const Point& x,
                         std::span<const Cube> family, const CubeRule& rule) {
  if (!(beta >= 0.0)) throw InvalidInput("smoothness order must be nonnegative");
  check_family(x, family);
  const int n = x.n;
  double best = 0.0;
  for (const Cube& q : family) {
    if (cube_misses_support(f, q)) continue;
    const double vol = q.volume();
    const double mean = cube_integral(f, q, rule) / vol;
    const double osc = cube_integral(f, q, rule, [mean](double v) { return std::abs(v - mean); });
    best = std::max(best, std::pow(vol, -1.0 - beta / n) * osc);
  }
  return best;
}

double lemma_la_bound(double b_lipnorm, double beta, const OperatorSpec& spec,
                      const ScalarField& f, const Point& x, std::span<const double> scales,
                      const CubeRule& rule, double tol) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("lemma bound requires 0 < beta < 1");
  if (b_lipnorm == 0.0) return 0.0;
  const KernelSpec& k = spec.kernel();
  const MatrixField& field = spec.field();
  const int n = spec.dim();
  auto g = [&](double r) {
    const double mass = k.angular_abs_mass(r, n);
    if (mass == 0.0) return 0.0;
    const Matrix a = field.at_radius(r);
    const double det_inv = std::abs(determinant(inverse(a)));
    const double weight =
        std::max(1.0, std::pow(det_inv, beta / n)) * (1.0 + std::pow(op_norm(a), beta));
    const Point ax = field.apply(r, x);
    const auto family = cube_family(ax, scales);
    return mass / r * weight * frac_maximal(beta, f, ax, family, rule);
  };
  RadialOptions opts;
  opts.tol = tol;
  opts.breakpoints = k.breakpoints;
  return b_lipnorm * integrate_radial(g, k.r_lo, k.r_hi, opts).value;
}

}  // namespace hausdorff
