#include "hausdorff/domain.hpp"

#include <cmath>

#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPow2Slack = 1e-9;

// True when v lies within kPow2Slack (relative) of 2^e but is not exactly 2^e.
bool near_power_of_two(double v, int e) {
  const double p = std::ldexp(1.0, e);
  return v != p && std::abs(v - p) <= kPow2Slack * p;
}

}  // namespace

double DyadicShell::inner_radius() const { return std::ldexp(1.0, k - 1); }
double DyadicShell::outer_radius() const { return std::ldexp(1.0, k); }

double DyadicShell::volume(int n) const {
  return ball_volume(n) * (std::pow(outer_radius(), n) - std::pow(inner_radius(), n));
}

bool DyadicShell::contains(const Point& x) const {
  const double r = x.norm();
  return r >= inner_radius() && r < outer_radius();
}

double Cube::volume() const { return std::pow(side, center.n); }

bool Cube::contains(const Point& x) const {
  for (int i = 0; i < center.n; ++i) {
    const double slack = 1e-14 * (0.5 * side + std::abs(center.c[i]));
    if (std::abs(x.c[i] - center.c[i]) > 0.5 * side + slack) return false;
  }
  return true;
}

void RadialGrid::validate() const {
  if (n < 1 || n > 3) throw InvalidInput("grid dimension must be 1, 2 or 3");
  if (k_min > k_max) throw InvalidInput("grid requires k_min <= k_max");
  if (radial_points_per_shell < 1 || angular_points < 1) {
    throw InvalidInput("grid point counts must be >= 1");
  }
}

double RadialGrid::r_lo() const { return std::ldexp(1.0, k_min - 1); }
double RadialGrid::r_hi() const { return std::ldexp(1.0, k_max); }

std::vector<double> RadialGrid::radial_nodes() const {
  validate();
  std::vector<double> out;
  const int shells = k_max - k_min + 1;
  out.reserve(static_cast<std::size_t>(shells * radial_points_per_shell));
  for (int s = 0; s < shells; ++s) {
    for (int i = 0; i < radial_points_per_shell; ++i) {
      const double e = (k_min - 1 + s) + (i + 0.5) / radial_points_per_shell;
      out.push_back(std::exp2(e));
    }
  }
  return out;
}

std::vector<Point> RadialGrid::directions() const {
  validate();
  std::vector<Point> out;
  if (n == 1) {
    out = {Point(1, {1.0}), Point(1, {-1.0})};
  } else if (n == 2) {
    for (int j = 0; j < angular_points; ++j) {
      const double t = 2.0 * kPi * (j + 0.5) / angular_points;
      out.emplace_back(2, std::initializer_list<double>{std::cos(t), std::sin(t)});
    }
  } else {
    for (int a = 0; a < 3; ++a)
      for (double s : {1.0, -1.0}) {
        Point p(3);
        p.c[a] = s;
        out.push_back(p);
      }
    const double d = 1.0 / std::sqrt(3.0);
    for (double sx : {1.0, -1.0})
      for (double sy : {1.0, -1.0})
        for (double sz : {1.0, -1.0}) out.emplace_back(3, std::initializer_list<double>{sx * d, sy * d, sz * d});
  }
  return out;
}

int shell_index(double radius) {
  if (!(radius > 0.0)) throw OriginExcluded("shell index undefined at the origin");
  if (!std::isfinite(radius)) throw InvalidInput("shell index of non-finite radius");
  int e = 0;
  std::frexp(radius, &e);  // radius = m * 2^e, m in [0.5, 1)
  return e;
}

int shell_index(const Point& x) { return shell_index(x.norm()); }

ShellCover shell_cover(const Matrix& a) {
  const Matrix inv = inverse(a);
  const double s_min = 1.0 / op_norm(inv);
  const double s_max = op_norm(a);
  int l = static_cast<int>(std::floor(std::log2(s_min)));
  // floor(log2 s) can be off by one when s sits on a power of two.
  if (std::ldexp(1.0, l) > s_min) --l;
  if (std::ldexp(1.0, l + 1) <= s_min) ++l;
  if (near_power_of_two(s_min, l)) --l;

  int top = static_cast<int>(std::floor(std::log2(s_max)));
  if (std::ldexp(1.0, top) > s_max) --top;
  if (std::ldexp(1.0, top + 1) <= s_max) ++top;
  if (near_power_of_two(s_max, top + 1)) ++top;

  ShellCover cover;
  cover.l = l;
  cover.m = std::max(0, top - l);
  return cover;
}

RadiusBounds image_shell_bounds(const Matrix& a, int k) {
  const Matrix inv = inverse(a);
  return {std::ldexp(1.0 / op_norm(inv), k - 1), std::ldexp(op_norm(a), k)};
}

std::vector<Cube> cube_family(const Point& x, std::span<const double> scales) {
  if (scales.empty()) throw InvalidInput("cube family needs at least one scale");
  const int n = x.n;
  int combos = 1;
  for (int i = 0; i < n; ++i) combos *= 3;
  std::vector<Cube> out;
  out.reserve(scales.size() * static_cast<std::size_t>(combos));
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("cube scales must be positive");
    for (int code = 0; code < combos; ++code) {
      Cube q;
      q.center = x;
      q.side = s;
      int c = code;
      for (int i = 0; i < n; ++i) {
        q.center.c[i] += 0.5 * s * ((c % 3) - 1);
        c /= 3;
      }
      out.push_back(q);
    }
  }
  return out;
}

std::vector<double> geometric_ladder(double lo_exp, double hi_exp, double step) {
  if (!(step > 0.0) || lo_exp > hi_exp) throw InvalidInput("invalid ladder range");
  std::vector<double> out;
  const int j0 = static_cast<int>(std::ceil(lo_exp / step - 1e-12));
  const int j1 = static_cast<int>(std::floor(hi_exp / step + 1e-12));
  for (int j = j0; j <= j1; ++j) out.push_back(std::exp2(j * step));
  return out;
}

}  // namespace hausdorff
