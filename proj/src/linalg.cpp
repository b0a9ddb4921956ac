#include "hausdorff/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

void check_dim(int n) {
  if (n < 1 || n > 3) throw InvalidInput("matrix dimension must be 1, 2 or 3");
}

void require_finite(const Matrix& b) {
  if (!b.is_finite()) throw InvalidInput("matrix has non-finite entries");
}

double singular_threshold(const Matrix& b) {
  return 1e-12 * std::pow(b.max_abs_entry(), b.dim());
}

// Largest eigenvalue of a symmetric 3x3 matrix by cyclic Jacobi rotations.
double max_symmetric_eigenvalue(std::array<std::array<double, 3>, 3> s) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < 3; ++i) {
      diag += s[i][i] * s[i][i];
      for (int j = i + 1; j < 3; ++j) off += s[i][j] * s[i][j];
    }
    if (off <= 1e-30 * diag || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (s[p][q] == 0.0) continue;
        const double theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < 3; ++k) {
          const double skp = s[k][p], skq = s[k][q];
          s[k][p] = c * skp - sn * skq;
          s[k][q] = sn * skp + c * skq;
        }
        for (int k = 0; k < 3; ++k) {
          const double spk = s[p][k], sqk = s[q][k];
          s[p][k] = c * spk - sn * sqk;
          s[q][k] = sn * spk + c * sqk;
        }
      }
    }
  }
  return std::max({s[0][0], s[1][1], s[2][2]});
}

}  // namespace

Matrix::Matrix(int n) : n_(n) { check_dim(n); }

Matrix::Matrix(int n, std::initializer_list<double> entries) : n_(n) {
  check_dim(n);
  if (entries.size() != static_cast<std::size_t>(n * n)) {
    throw InvalidInput("matrix initializer needs n*n entries");
  }
  int k = 0;
  for (double v : entries) {
    a_[(k / n) * 3 + (k % n)] = v;
    ++k;
  }
}

Matrix Matrix::identity(int n) { return scalar(n, 1.0); }

Matrix Matrix::scalar(int n, double s) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

double Matrix::max_abs_entry() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

bool Matrix::is_finite() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!std::isfinite((*this)(i, j))) return false;
  return true;
}

Point Matrix::apply(const Point& x) const {
  Point y(n_);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x.c[j];
    y.c[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (other.n_ != n_) throw InvalidInput("matrix dimension mismatch");
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += (*this)(i, k) * other(k, j);
      r(i, j) = s;
    }
  return r;
}

Matrix Matrix::scaled(double s) const {
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = s * (*this)(i, j);
  return r;
}

Matrix Matrix::transposed() const {
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

double determinant(const Matrix& b) {
  switch (b.dim()) {
    case 1:
      return b(0, 0);
    case 2:
      return b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
    default:
      return b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
             b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
             b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  }
}

double op_norm(const Matrix& b) {
  require_finite(b);
  switch (b.dim()) {
    case 1:
      return std::abs(b(0, 0));
    case 2: {
      const double s = b(0, 0) * b(0, 0) + b(0, 1) * b(0, 1) +
                       b(1, 0) * b(1, 0) + b(1, 1) * b(1, 1);
      const double d = determinant(b);
      const double disc = std::max(0.0, s * s - 4.0 * d * d);
      return std::sqrt(0.5 * (s + std::sqrt(disc)));
    }
    default: {
      std::array<std::array<double, 3>, 3> g{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double s = 0.0;
          for (int k = 0; k < 3; ++k) s += b(k, i) * b(k, j);
          g[i][j] = s;
        }
      return std::sqrt(std::max(0.0, max_symmetric_eigenvalue(g)));
    }
  }
}

Matrix inverse(const Matrix& b) {
  require_finite(b);
  const double det = determinant(b);
  if (!(std::abs(det) > singular_threshold(b))) throw SingularMatrix(std::abs(det));
  const int n = b.dim();
  Matrix r(n);
  if (n == 1) {
    r(0, 0) = 1.0 / det;
  } else if (n == 2) {
    r(0, 0) = b(1, 1) / det;
    r(0, 1) = -b(0, 1) / det;
    r(1, 0) = -b(1, 0) / det;
    r(1, 1) = b(0, 0) / det;
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // cofactor of (j, i)
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
        const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        r(i, j) = (b(r0, c0) * b(r1, c1) - b(r0, c1) * b(r1, c0)) / det;
      }
  }
  return r;
}

DetBounds check_det_bounds(const Matrix& b) {
  const Matrix inv = inverse(b);
  const int n = b.dim();
  DetBounds out{};
  out.lhs = std::pow(op_norm(b), -n);
  out.mid = std::abs(determinant(inv));
  out.rhs = std::pow(op_norm(inv), n);
  constexpr double slack = 1e-10;
  out.holds = out.lhs <= out.mid * (1.0 + slack) && out.mid <= out.rhs * (1.0 + slack);
  return out;
}

}  // namespace hausdorff
