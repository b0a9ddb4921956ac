#pragma once

#include <array>
#include <cmath>
#include <initializer_list>

namespace hausdorff {

/// A point of R^n, n <= 3. Unused trailing coordinates are zero.
struct Point {
  std::array<double, 3> c{};
  int n = 1;

  Point() = default;
  explicit Point(int dim) : n(dim) {}
  Point(int dim, std::initializer_list<double> coords) : n(dim) {
    int i = 0;
    for (double v : coords) {
      if (i < 3) c[i++] = v;
    }
  }

  double operator[](int i) const { return c[i]; }
  double& operator[](int i) { return c[i]; }

  double norm() const {
    switch (n) {
      case 1:
        return std::abs(c[0]);
      case 2:
        return std::hypot(c[0], c[1]);
      default:
        return std::hypot(c[0], c[1], c[2]);
    }
  }

  Point scaled(double s) const {
    Point p(n);
    for (int i = 0; i < n; ++i) p.c[i] = s * c[i];
    return p;
  }
};

inline Point operator+(const Point& a, const Point& b) {
  Point p(a.n);
  for (int i = 0; i < a.n; ++i) p.c[i] = a.c[i] + b.c[i];
  return p;
}

inline Point operator-(const Point& a, const Point& b) {
  Point p(a.n);
  for (int i = 0; i < a.n; ++i) p.c[i] = a.c[i] - b.c[i];
  return p;
}

/// Surface measure of the unit sphere S^{n-1} (counting measure for n = 1).
inline double sphere_area(int n) {
  constexpr double pi = 3.14159265358979323846;
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * pi;
    default:
      return 4.0 * pi;
  }
}

/// Volume of the unit ball in R^n.
inline double ball_volume(int n) { return sphere_area(n) / n; }

}  // namespace hausdorff
