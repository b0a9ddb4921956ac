#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hausdorff/errors.hpp"
#include "hausdorff/linalg.hpp"

using namespace hausdorff;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

// Largest |Bx| over a dense sweep of unit vectors.
double sampled_norm(const Matrix& b, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double best = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Point x(b.dim());
    for (int i = 0; i < b.dim(); ++i) x.c[i] = g(rng);
    best = std::max(best, b.apply(x).norm() / x.norm());
  }
  return best;
}

}  // namespace

TEST_CASE("operator norm examples") {
  CHECK(op_norm(Matrix(2, {2, 0, 0, -3})) == doctest::Approx(3.0).epsilon(1e-14));
  for (int n = 1; n <= 3; ++n) CHECK(op_norm(Matrix::identity(n)) == doctest::Approx(1.0));
  const double golden = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
  CHECK(op_norm(Matrix(2, {1, 1, 0, 1})) == doctest::Approx(golden).epsilon(1e-14));
  CHECK(op_norm(Matrix(3)) == 0.0);
  CHECK(op_norm(Matrix(3, {1, 1, 0, 0, 1, 0, 0, 0, 5})) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK_THROWS_AS(op_norm(Matrix(1, {std::nan("")})), InvalidInput);
}

TEST_CASE("operator norm properties") {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 30; ++t) {
      const Matrix b = random_matrix(rng, n);
      const double nb = op_norm(b);
      CHECK(op_norm(b.scaled(-2.5)) == doctest::Approx(2.5 * nb).epsilon(1e-12));
      CHECK(nb >= sampled_norm(b, rng) * (1.0 - 1e-12));
      CHECK(nb <= sampled_norm(b, rng) * 1.05);
    }
  }
}

TEST_CASE("inverse") {
  const Matrix d = inverse(Matrix(2, {2, 0, 0, 4}));
  CHECK(d(0, 0) == 0.5);
  CHECK(d(1, 1) == 0.25);
  CHECK(d(0, 1) == 0.0);
  const Matrix s = inverse(Matrix(2, {0, 1, 1, 0}));
  CHECK(s(0, 1) == 1.0);
  CHECK(s(0, 0) == 0.0);
  const Matrix i3 = inverse(Matrix::identity(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(i3(i, j) == (i == j ? 1.0 : 0.0));

  try {
    inverse(Matrix(2, {1, 2, 2, 4}));
    FAIL("expected SingularMatrix");
  } catch (const SingularMatrix& e) {
    CHECK(e.abs_det() == 0.0);
  }

  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 50; ++t) {
      const Matrix b = random_matrix(rng, n);
      if (std::abs(determinant(b)) < 1e-3) continue;
      const Matrix p = b * inverse(b);
      const Matrix back = inverse(inverse(b));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(std::abs(p(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);
          CHECK(std::abs(back(i, j) - b(i, j)) < 1e-10);
        }
    }
  }
}

TEST_CASE("determinant-norm chain") {
  DetBounds a = check_det_bounds(Matrix(2, {2, 0, 0, 2}));
  CHECK(a.lhs == doctest::Approx(0.25));
  CHECK(a.mid == doctest::Approx(0.25));
  CHECK(a.rhs == doctest::Approx(0.25));
  CHECK(a.holds);

  DetBounds b = check_det_bounds(Matrix(2, {1, 0, 0, 4}));
  CHECK(b.lhs == doctest::Approx(1.0 / 16));
  CHECK(b.mid == doctest::Approx(0.25));
  CHECK(b.rhs == doctest::Approx(1.0));
  CHECK(b.holds);

  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  DetBounds r = check_det_bounds(Matrix(2, {c, -s, s, c}));
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.mid == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.holds);

  CHECK_THROWS_AS(check_det_bounds(Matrix(3)), SingularMatrix);
}
