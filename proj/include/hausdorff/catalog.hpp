#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hausdorff/linalg.hpp"
#include "hausdorff/point.hpp"

namespace hausdorff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Kernel Phi with radial support [r_lo, r_hi]. All presets are radial
/// profiles; a one-sided kernel (n = 1 only) lives on y > 0.
struct KernelSpec {
  std::string name;
  std::function<double(double)> profile;
  double r_lo = 0.0;
  double r_hi = 1.0;
  /// Radii where the profile jumps or loses smoothness.
  std::vector<double> breakpoints;
  bool one_sided = false;
  /// "L1" when Phi(y)|y|^{-n} is integrable on the support, "L1_loc" otherwise.
  std::string integrability = "L1";

  double operator()(const Point& y) const;
  /// Integral of Phi(r w) over unit directions w.
  double angular_mass(double r, int n) const;
  double angular_abs_mass(double r, int n) const;
};

enum class FieldKind { Radial, Constant };

/// y -> A(y). Every preset depends on |y| only.
struct MatrixField {
  std::string name;
  int n = 1;
  FieldKind kind = FieldKind::Constant;
  Matrix constant_matrix{1};
  /// Closed-form metadata as functions of r = |y|.
  std::function<double(double)> norm;      // ||A(y)||
  std::function<double(double)> inv_norm;  // ||A^{-1}(y)||
  std::function<double(double)> det_inv;   // |det A^{-1}(y)|

  Matrix at_radius(double r) const;
  Matrix at(const Point& y) const { return at_radius(y.norm()); }
  /// A(y) x for |y| = r.
  Point apply(double r, const Point& x) const;
  /// Radii r at which |A(r) x| crosses one of the given radii (radial kind
  /// only; constant fields give none).
  std::vector<double> crossing_radii(double x_norm, std::span<const double> radii) const;
};

struct FieldTags {
  bool bounded = true;
  bool compact_support = false;
  bool power_law = false;
  std::optional<double> lipschitz_beta;
  bool cmo = false;
  /// Constant symbols lie in every Lipschitz and CMO class with norm 0.
  bool constant = false;
};

/// Real-valued function on R^n with the metadata quadrature needs.
struct ScalarField {
  std::string name;
  std::function<double(const Point&)> fn;
  /// Radii where the field jumps or kinks; 0 marks a discontinuity across a
  /// hyperplane through the origin.
  std::vector<double> breakpoints;
  /// The field vanishes for |x| outside [support_lo, support_hi].
  double support_lo = 0.0;
  double support_hi = kInf;
  bool radial = false;
  bool regular_at_origin = true;
  /// For tabulated fields in n = 2: piecewise linear in angle on this many
  /// equispaced nodes (0 = not tabulated).
  int angular_nodes = 0;
  /// Interpolation radii of a tabulated field; annulus integrals split there.
  std::vector<double> radial_nodes;
  FieldTags tags;
  /// Closed-form values, keyed by quantity ("measure", "lipschitz", "cmo2").
  std::map<std::string, double> analytic;

  double operator()(const Point& x) const { return fn(x); }

  ScalarField scaled(double c) const;
  /// x -> f(mu x), mu > 0.
  ScalarField dilated(double mu) const;
};

ScalarField product(const ScalarField& a, const ScalarField& b);
ScalarField sum(const ScalarField& a, const ScalarField& b);

struct TestfnOptions {
  /// Truncation radius for power-decay presets without an explicit epsilon.
  double truncation = std::ldexp(1.0, -9);
};

/// Kernel presets: annulus(a,b), ball(b), interval(a,b) [n = 1, one-sided],
/// power(gamma, <base>), bump(a,b), zero.
KernelSpec preset_kernel(const std::string& name, int n);

/// Field presets: radial, dilation(c), shear(s), rotation-scale(c,theta).
MatrixField preset_matrix_field(const std::string& name, int n);

/// Symbol presets: power-beta(beta), halfspace, log-bump, log-abs, constant(c).
ScalarField preset_symbol(const std::string& name, int n);

/// Test-function presets: shell-indicator(k), ball-indicator(r),
/// interval-indicator(a,b) [n = 1], power-decay(sigma[,eps]), gaussian-bump,
/// smooth-bump(a,b), constant(c), zero.
ScalarField preset_testfn(const std::string& name, int n, const TestfnOptions& opts = {});

std::vector<std::string> kernel_preset_names();
std::vector<std::string> field_preset_names();
std::vector<std::string> symbol_preset_names();
std::vector<std::string> testfn_preset_names();

}  // namespace hausdorff
