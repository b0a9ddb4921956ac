#pragma once

#include <array>
#include <initializer_list>

#include "hausdorff/point.hpp"

namespace hausdorff {

/// Dense n x n real matrix, 1 <= n <= 3, row-major.
class Matrix {
 public:
  explicit Matrix(int n = 1);
  /// Row-major entries; the list must hold exactly n*n values.
  Matrix(int n, std::initializer_list<double> entries);

  static Matrix identity(int n);
  static Matrix scalar(int n, double s);

  int dim() const noexcept { return n_; }
  double operator()(int i, int j) const { return a_[i * 3 + j]; }
  double& operator()(int i, int j) { return a_[i * 3 + j]; }

  double max_abs_entry() const;
  bool is_finite() const;

  Point apply(const Point& x) const;
  Matrix operator*(const Matrix& other) const;
  Matrix scaled(double s) const;
  Matrix transposed() const;

 private:
  int n_;
  std::array<double, 9> a_{};
};

double determinant(const Matrix& b);

/// Operator norm induced by the Euclidean norm (largest singular value).
double op_norm(const Matrix& b);

/// Throws SingularMatrix when |det| <= 1e-12 * (max |entry|)^n.
Matrix inverse(const Matrix& b);

struct DetBounds {
  double lhs;  // ||B||^{-n}
  double mid;  // |det B^{-1}|
  double rhs;  // ||B^{-1}||^{n}
  bool holds;
};

/// The chain ||B||^{-n} <= |det B^{-1}| <= ||B^{-1}||^n, checked with 1e-10
/// relative slack.
DetBounds check_det_bounds(const Matrix& b);

}  // namespace hausdorff
