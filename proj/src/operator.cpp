#include "hausdorff/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

bool is_zero_field(const ScalarField& f) { return f.support_hi <= f.support_lo && f.support_hi == 0.0; }

struct Range {
  double lo, hi;
  bool empty() const { return !(hi > lo); }
};

// Integration range in r = |y| after trimming to where f(A(y)x) can be nonzero.
Range trimmed_range(const KernelSpec& k, const MatrixField& field, const ScalarField& f,
                    double x_norm) {
  Range r{k.r_lo, k.r_hi};
  if (field.kind == FieldKind::Radial && x_norm > 0.0) {
    // |A(y)x| = |x| / r must lie in [support_lo, support_hi].
    if (f.support_hi < kInf) r.lo = std::max(r.lo, x_norm / f.support_hi);
    if (f.support_lo > 0.0) r.hi = std::min(r.hi, x_norm / f.support_lo);
  }
  return r;
}

std::vector<double> radial_breakpoints(const KernelSpec& k, const MatrixField& field,
                                       const ScalarField& f, double x_norm) {
  std::vector<double> bp = k.breakpoints;
  std::vector<double> radii = f.breakpoints;
  radii.push_back(f.support_lo);
  if (f.support_hi < kInf) radii.push_back(f.support_hi);
  auto cross = field.crossing_radii(x_norm, radii);
  bp.insert(bp.end(), cross.begin(), cross.end());
  return bp;
}

void check_origin(const Point& x, const ScalarField& f) {
  if (x.norm() == 0.0 && !f.regular_at_origin) {
    throw OriginExcluded("x = 0 is not allowed for '" + f.name + "'");
  }
}

// Integrates mass(r)/r * value(r) over the trimmed range (radial reduction).
double reduced_integral(const OperatorSpec& spec, const ScalarField& support_of,
                        const Point& x, const std::function<double(const Point&)>& value,
                        std::vector<double> extra_breaks, double tol) {
  const KernelSpec& k = spec.kernel();
  const MatrixField& field = spec.field();
  const int n = spec.dim();
  const double xn = x.norm();
  const Range range = trimmed_range(k, field, support_of, xn);
  if (range.empty()) return 0.0;
  auto bp = radial_breakpoints(k, field, support_of, xn);
  bp.insert(bp.end(), extra_breaks.begin(), extra_breaks.end());
  if (range.lo == 0.0 && field.kind == FieldKind::Constant) {
    // Phi(y)|y|^{-n} is not integrable at the origin; only a vanishing
    // factor can save the integral.
    if (value(field.apply(1.0, x)) != 0.0 && k.angular_mass(0.5 * k.r_hi, n) != 0.0) {
      throw IntegrandError("kernel is not integrable against |y|^{-n} near the origin", 0.0);
    }
    return 0.0;
  }
  auto g = [&](double r) {
    const double m = k.angular_mass(r, n);
    if (m == 0.0) return 0.0;
    const double v = value(field.apply(r, x));
    return v == 0.0 ? 0.0 : m * v / r;
  };
  RadialOptions opts;
  opts.tol = tol;
  opts.breakpoints = bp;
  return integrate_radial(g, range.lo, range.hi, opts).value;
}

double generic_integral(const OperatorSpec& spec, const ScalarField& support_of, const Point& x,
                        const std::function<double(const Point&)>& value,
                        std::vector<double> extra_breaks, double tol) {
  const KernelSpec& k = spec.kernel();
  const MatrixField& field = spec.field();
  const int n = spec.dim();
  auto bp = radial_breakpoints(k, field, support_of, x.norm());
  bp.insert(bp.end(), extra_breaks.begin(), extra_breaks.end());
  auto g = [&](const Point& y) {
    const double phi = k(y);
    if (phi == 0.0) return 0.0;
    const double r = y.norm();
    const double v = value(field.at(y).apply(x));
    return v == 0.0 ? 0.0 : phi * v / std::pow(r, n);
  };
  AnnulusOptions opts;
  opts.tol = tol;
  opts.breakpoints = bp;
  return integrate_annulus(g, n, k.r_lo, k.r_hi, opts).value;
}

}  // namespace

OperatorSpec::OperatorSpec(KernelSpec kernel, MatrixField field, int n)
    : kernel_(std::move(kernel)), field_(std::move(field)), n_(n) {
  if (n < 1 || n > 3) throw InvalidInput("operator dimension must be 1, 2 or 3");
  if (field_.n != n) throw InvalidInput("matrix field dimension does not match operator");
  if (kernel_.one_sided && n != 1) throw InvalidInput("one-sided kernels are one-dimensional");
  const double lo = kernel_.r_lo > 0.0 ? kernel_.r_lo : kernel_.r_hi * 1e-6;
  for (int i = 0; i <= 64; ++i) {
    const double r = lo * std::pow(kernel_.r_hi / lo, i / 64.0);
    if (kernel_.profile(r) == 0.0) continue;
    (void)inverse(field_.at_radius(r));
  }
}

double hausdorff_apply(const OperatorSpec& spec, const ScalarField& f, const Point& x,
                       const OperatorOptions& opts) {
  if (x.n != spec.dim()) throw InvalidInput("point dimension does not match operator");
  check_origin(x, f);
  if (is_zero_field(f)) return 0.0;
  auto value = [&f](const Point& z) { return f(z); };
  if (!opts.force_generic) return reduced_integral(spec, f, x, value, {}, opts.tol);
  return generic_integral(spec, f, x, value, {}, opts.tol);
}

double hausdorff_radial(const KernelSpec& kernel, const ScalarField& f, const Point& x,
                        double tol) {
  check_origin(x, f);
  if (is_zero_field(f)) return 0.0;
  const int n = x.n;
  if (kernel.one_sided && n != 1) throw InvalidInput("one-sided kernels are one-dimensional");
  const double xn = x.norm();
  double lo = kernel.r_lo, hi = kernel.r_hi;
  if (xn > 0.0) {
    if (f.support_hi < kInf) lo = std::max(lo, xn / f.support_hi);
    if (f.support_lo > 0.0) hi = std::min(hi, xn / f.support_lo);
  }
  if (!(hi > lo)) return 0.0;
  std::vector<double> bp = kernel.breakpoints;
  for (double rho : f.breakpoints)
    if (rho > 0.0) bp.push_back(xn / rho);
  bp.push_back(xn / std::max(f.support_lo, 1e-300));
  if (f.support_hi < kInf) bp.push_back(xn / f.support_hi);
  auto g = [&](double r) {
    const double m = kernel.angular_mass(r, n);
    if (m == 0.0) return 0.0;
    const double v = f(x.scaled(1.0 / r));
    return v == 0.0 ? 0.0 : m * v / r;
  };
  RadialOptions opts;
  opts.tol = tol;
  opts.breakpoints = bp;
  return integrate_radial(g, lo, hi, opts).value;
}

double commutator_apply(const OperatorSpec& spec, const ScalarField& b, const ScalarField& f,
                        const Point& x, const OperatorOptions& opts, CommutatorForm form) {
  if (x.n != spec.dim()) throw InvalidInput("point dimension does not match operator");
  check_origin(x, f);
  check_origin(x, b);
  if (is_zero_field(f)) return 0.0;

  double single = 0.0, difference = 0.0, scale = 1.0;
  if (form != CommutatorForm::Difference) {
    const double bx = b(x);
    auto value = [&](const Point& z) {
      const double fz = f(z);
      return fz == 0.0 ? 0.0 : (bx - b(z)) * fz;
    };
    const auto b_breaks = spec.field().crossing_radii(x.norm(), b.breakpoints);
    single = !opts.force_generic ? reduced_integral(spec, f, x, value, b_breaks, opts.tol)
                                 : generic_integral(spec, f, x, value, b_breaks, opts.tol);
    if (form == CommutatorForm::Single) return single;
  }
  {
    const ScalarField bf = product(b, f);
    const double hf = hausdorff_apply(spec, f, x, opts);
    const double hbf = hausdorff_apply(spec, bf, x, opts);
    const double first = hf == 0.0 ? 0.0 : b(x) * hf;
    difference = first - hbf;
    scale = std::max({1.0, std::abs(first), std::abs(hbf)});
    if (form == CommutatorForm::Difference) return difference;
  }
  const double slack = std::max(1e-8, 10.0 * opts.tol) * scale;
  if (std::abs(single - difference) > slack) {
    std::ostringstream os;
    os << "commutator forms disagree: difference " << difference << ", single " << single;
    throw ConsistencyError(os.str());
  }
  return difference;
}

}  // namespace hausdorff
