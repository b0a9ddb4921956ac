#pragma once

#include <span>
#include <vector>

#include "hausdorff/catalog.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/operator.hpp"

namespace hausdorff {

/// How cube integrals are computed: adaptive Gauss-Kronrod along the line
/// for n = 1, tensor-product midpoint rule with nodes_per_axis^n nodes for
/// n >= 2.
struct CubeRule {
  int nodes_per_axis = 64;
  double tol = 1e-8;
};

/// Integral over the cube of h(f(z)) for a pointwise transform h.
double cube_integral(const ScalarField& f, const Cube& q, const CubeRule& rule,
                     const std::function<double(double)>& transform);
inline double cube_integral(const ScalarField& f, const Cube& q, const CubeRule& rule = {}) {
  return cube_integral(f, q, rule, [](double v) { return v; });
}

/// max over the family of |Q|^{beta/n - 1} int_Q |f|. beta = 0 gives the
/// Hardy-Littlewood maximal function restricted to the family.
double frac_maximal(double beta, const ScalarField& f, const Point& x,
                    std::span<const Cube> family, const CubeRule& rule = {});

/// max over the family of |Q|^{-1-beta/n} int_Q |f - f_Q|.
double sharp_oscillation(const ScalarField& f, double beta, const Point& x,
                         std::span<const Cube> family, const CubeRule& rule = {});

/// b_lipnorm * int |Phi(y)||y|^{-n} max{1, |det A^{-1}(y)|^{beta/n}}
///   (1 + ||A(y)||^beta) M_beta f(A(y)x) dy,
/// with M_beta taken over cube_family(A(y)x, scales).
double lemma_la_bound(double b_lipnorm, double beta, const OperatorSpec& spec,
                      const ScalarField& f, const Point& x, std::span<const double> scales,
                      const CubeRule& rule = {}, double tol = 1e-6);

}  // namespace hausdorff
