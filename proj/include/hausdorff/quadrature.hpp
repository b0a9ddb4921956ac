#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "hausdorff/point.hpp"

namespace hausdorff {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
  /// False when the panel budget ran out before the tolerance was met.
  bool converged = true;
};

using RadialIntegrand = std::function<double(double)>;
using PointIntegrand = std::function<double(const Point&)>;

inline constexpr double kDefaultTol = 1e-8;

struct RadialOptions {
  double tol = kDefaultTol;
  std::span<const double> breakpoints{};
  std::size_t max_panels = 2000;
  /// Pre-split wide segments (and segments touching 0) at powers of two.
  bool dyadic_split = true;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of g over
/// [r_lo, r_hi], 0 <= r_lo < r_hi < inf. Panels are split at breakpoints
/// first. Stops when the summed error estimate is below
/// tol * max(|value|, 1e-3 * integral of |g|).
QuadratureResult integrate_radial(const RadialIntegrand& g, double r_lo, double r_hi,
                                  const RadialOptions& opts = {});
QuadratureResult integrate_radial(const RadialIntegrand& g, double r_lo, double r_hi,
                                  double tol);

struct AnnulusOptions {
  double tol = kDefaultTol;
  std::span<const double> breakpoints{};
  /// Starting angular order: circle nodes (n = 2) or Gauss-Legendre nodes in
  /// cos(theta) (n = 3, with twice as many azimuthal nodes). 0 = default.
  int angular_order = 0;
  /// Double the angular order until successive results agree.
  bool adaptive_angular = true;
  std::size_t max_panels = 2000;
};

/// Integral of g over {r_lo <= |y| <= r_hi} in R^n with dy = r^{n-1} dr dsigma:
/// radial adaptive quadrature times a fixed symmetric angular rule (the
/// two points +-r for n = 1).
QuadratureResult integrate_annulus(const PointIntegrand& g, int n, double r_lo,
                                   double r_hi, const AnnulusOptions& opts = {});

/// Symmetric angular rule on S^{n-1}; weights sum to the sphere area.
struct AngularRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
};
AngularRule angular_rule(int n, int order);
int default_angular_order(int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hausdorff
