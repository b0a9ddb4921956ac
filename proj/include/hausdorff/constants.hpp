#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hausdorff/operator.hpp"

namespace hausdorff {

/// Theorems whose hypotheses and constants the library knows.
enum class TheoremId { T3_1, T3_2, T3_3, T3_4, T3_5, T4_1, T4_2, L2_7, Pointwise, OpenCmoLp };

TheoremId parse_theorem(const std::string& text);
std::string theorem_label(TheoremId id);
/// K1..K7 for the theorem ids that own a constant.
std::optional<int> theorem_constant(TheoremId id);

/// Exponents used by the theorem statements. Unused members are ignored.
struct ExponentBundle {
  double p = 2.0, q = 2.0;
  double p1 = 2.0, p2 = 2.0, q1 = 2.0, q2 = 2.0;
  double alpha = 0.0, alpha1 = 0.0, alpha2 = 0.0;
  double lambda = 0.0;
  double beta = 0.5;
};

/// Human-readable statements of every hypothesis the bundle violates, in the
/// order the theorem lists them. Empty means all hold.
std::vector<std::string> check_hypotheses(TheoremId id, const ExponentBundle& e, int n);

/// Condition-number growth over shells:
///   1 + log2(||A|| ||A^{-1}||)   if alpha == lambda,
///   ||A^{-1}||^{alpha-lambda}    if alpha > lambda,
///   ||A||^{lambda-alpha}         if alpha < lambda.
double g_alpha_lambda(const Matrix& a, double alpha, double lambda);
double g_tilde_alpha(const Matrix& a, double alpha);

/// log(2/||A||) for ||A|| < 1, log(2||A||) otherwise.
double log_growth_factor(double a_norm);

/// |Phi(y)|/|y|^n max{1, |det A^{-1}(y)|^{beta/n}} (1 + ||A(y)||^beta).
double phi_weight(const Point& y, const KernelSpec& kernel, const MatrixField& field, double beta);

/// |Phi(y)|/|y|^n |det A^{-1}(y)|^{1/q1} log_growth_factor(||A(y)||).
double varphi_weight(const Point& y, const KernelSpec& kernel, const MatrixField& field, double q1);

struct ConstantSpec {
  int which = 1;  // 1..7
  ExponentBundle exponents;
  KernelSpec kernel;
  MatrixField field;
  int n = 1;
};

struct ConstantResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// The quadrature error estimate exceeded 10% of the value.
  bool divergence_suspect = false;
};

/// Integrand of K_which at |y| = r after angular reduction (includes the
/// kernel's angular mass and the 1/r Jacobian factor).
double k_integrand(const ConstantSpec& spec, double r);

/// Throws ConstraintViolation naming the first violated hypothesis.
ConstantResult k_constant(const ConstantSpec& spec, double tol = kDefaultTol);

}  // namespace hausdorff
