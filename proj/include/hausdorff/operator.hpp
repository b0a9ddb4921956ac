#pragma once

#include "hausdorff/catalog.hpp"
#include "hausdorff/quadrature.hpp"

namespace hausdorff {

/// Kernel, matrix field and dimension of H_{Phi,A}. Construction samples the
/// kernel support and rejects fields that are singular there.
class OperatorSpec {
 public:
  OperatorSpec(KernelSpec kernel, MatrixField field, int n);

  const KernelSpec& kernel() const noexcept { return kernel_; }
  const MatrixField& field() const noexcept { return field_; }
  int dim() const noexcept { return n_; }

 private:
  KernelSpec kernel_;
  MatrixField field_;
  int n_;
};

struct OperatorOptions {
  double tol = kDefaultTol;
  /// Integrate over the full y-annulus with an angular rule instead of the
  /// radial reduction available when Phi and A depend on |y| only.
  bool force_generic = false;
};

/// H_{Phi,A} f(x) = int Phi(y) |y|^{-n} f(A(y) x) dy over supp Phi.
double hausdorff_apply(const OperatorSpec& spec, const ScalarField& f, const Point& x,
                       const OperatorOptions& opts = {});

/// H_Phi f(x) = int Phi(y) |y|^{-n} f(x / |y|) dy, evaluated directly.
double hausdorff_radial(const KernelSpec& kernel, const ScalarField& f, const Point& x,
                        double tol = kDefaultTol);

enum class CommutatorForm {
  /// Both forms, cross-checked; returns the difference form.
  Both,
  /// b(x) H f(x) - H(b f)(x).
  Difference,
  /// int Phi(y)|y|^{-n} (b(x) - b(A(y)x)) f(A(y)x) dy.
  Single,
};

double commutator_apply(const OperatorSpec& spec, const ScalarField& b, const ScalarField& f,
                        const Point& x, const OperatorOptions& opts = {},
                        CommutatorForm form = CommutatorForm::Both);

}  // namespace hausdorff
