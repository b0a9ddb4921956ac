#pragma once

#include <span>
#include <vector>

#include "hausdorff/linalg.hpp"
#include "hausdorff/point.hpp"

namespace hausdorff {

/// Dyadic shell C_k = {x : 2^{k-1} <= |x| < 2^k}; B_k = {|x| < 2^k}.
struct DyadicShell {
  int k = 0;

  double inner_radius() const;
  double outer_radius() const;
  /// Lebesgue measure of C_k in R^n.
  double volume(int n) const;
  bool contains(const Point& x) const;
};

/// Axis-parallel cube with the given center and side length.
struct Cube {
  Point center;
  double side = 1.0;

  double volume() const;
  /// Closed-cube membership.
  bool contains(const Point& x) const;
};

/// Discretization carrier for norms and tabulated fields.
struct RadialGrid {
  int n = 1;
  int k_min = -8;
  int k_max = 8;
  int radial_points_per_shell = 32;
  int angular_points = 64;

  void validate() const;
  /// Inner edge of the truncated domain, 2^{k_min - 1}.
  double r_lo() const;
  /// Outer edge of the truncated domain, 2^{k_max}.
  double r_hi() const;
  /// Log-uniform radial nodes, radial_points_per_shell per shell, each node
  /// the midpoint (in log scale) of its cell.
  std::vector<double> radial_nodes() const;
  /// Unit directions: {+1,-1} for n = 1, equispaced circle for n = 2,
  /// axes plus diagonals for n = 3.
  std::vector<Point> directions() const;
};

/// Cover of A*C_k by the shells C_{k+j}, j in {l, ..., l+m+1}.
struct ShellCover {
  int l = 0;
  int m = 0;

  int first() const { return l; }
  int last() const { return l + m + 1; }
  int width() const { return m + 2; }
};

/// Unique k with 2^{k-1} <= |x| < 2^k. Throws OriginExcluded at x = 0.
int shell_index(const Point& x);
int shell_index(double radius);

/// Throws SingularMatrix for singular A.
ShellCover shell_cover(const Matrix& a);

struct RadiusBounds {
  double r_lo;
  double r_hi;
};

/// Radii bracketing A*C_k: (||A^{-1}||^{-1} 2^{k-1}, ||A|| 2^k).
RadiusBounds image_shell_bounds(const Matrix& a, int k);

/// For each scale s: the 3^n cubes of side s whose centers are x shifted by
/// {-s/2, 0, s/2} along each axis. Every cube's closure contains x; the zero
/// shift is the centered cube Q(x, s).
std::vector<Cube> cube_family(const Point& x, std::span<const double> scales);

/// Scales 2^{j * step} for j with j*step in [lo_exp, hi_exp].
std::vector<double> geometric_ladder(double lo_exp, double hi_exp, double step = 1.0);

}  // namespace hausdorff
