#include <doctest.h>

#include <cmath>
#include <random>

#include "hausdorff/catalog.hpp"
#include "hausdorff/errors.hpp"

using namespace hausdorff;

namespace {

Point random_point(std::mt19937_64& rng, int n, double r) {
  std::normal_distribution<double> g;
  Point d(n);
  for (int i = 0; i < n; ++i) d.c[i] = g(rng);
  return d.scaled(r / d.norm());
}

}  // namespace

TEST_CASE("kernel presets") {
  KernelSpec a = preset_kernel("annulus(1,2)", 2);
  CHECK(a.r_lo == 1.0);
  CHECK(a.r_hi == 2.0);
  CHECK(a(Point(2, {1.5, 0.0})) == 1.0);
  CHECK(a(Point(2, {0.0, 0.9})) == 0.0);
  CHECK(a(Point(2, {2.1, 0.0})) == 0.0);

  KernelSpec b = preset_kernel("ball(1)", 3);
  CHECK(b.r_lo == 0.0);
  CHECK(b(Point(3, {0.1, 0.2, 0.3})) == 1.0);

  KernelSpec p = preset_kernel("power(0.5, annulus(1,4))", 1);
  CHECK(p(Point(1, {-4.0})) == doctest::Approx(0.5));
  CHECK(p(Point(1, {0.5})) == 0.0);
  CHECK(p.angular_mass(2.0, 1) == doctest::Approx(2.0 / std::sqrt(2.0)));

  KernelSpec z = preset_kernel("zero", 2);
  CHECK(z(Point(2, {0.5, 0.5})) == 0.0);

  CHECK_THROWS_AS(preset_kernel("triangle(1)", 1), CatalogMiss);
  try {
    preset_kernel("nope", 1);
  } catch (const CatalogMiss& e) {
    CHECK(std::string(e.what()).find("annulus") != std::string::npos);
  }
}

TEST_CASE("kernel support is exact") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 6.0);
  for (const char* name : {"annulus(1,2)", "ball(1.5)", "power(0.5, annulus(1,4))", "bump(1,3)"}) {
    for (int n = 1; n <= 3; ++n) {
      const KernelSpec k = preset_kernel(name, n);
      int outside_nonzero = 0;
      for (int t = 0; t < 3000; ++t) {
        const double r = u(rng);
        if (r >= k.r_lo && r <= k.r_hi) continue;
        if (k(random_point(rng, n, r)) != 0.0) ++outside_nonzero;
      }
      CHECK(outside_nonzero == 0);
    }
  }
}

TEST_CASE("matrix field presets") {
  MatrixField radial = preset_matrix_field("radial", 2);
  const Matrix a = radial.at(Point(2, {2.0, 0.0}));
  CHECK(a(0, 0) == 0.5);
  CHECK(a(1, 1) == 0.5);
  CHECK(std::abs(determinant(inverse(a))) == doctest::Approx(4.0));
  MatrixField dil = preset_matrix_field("dilation(3)", 2);
  CHECK(dil.at(Point(2, {0.1, 7.0}))(1, 1) == 3.0);
  CHECK(dil.at(Point(2, {0.1, 7.0}))(0, 1) == 0.0);
  MatrixField shear = preset_matrix_field("shear(1)", 2);
  CHECK(op_norm(shear.at(Point(2, {1.0, 0.0}))) == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK_THROWS_AS(preset_matrix_field("shear(1)", 1), InvalidInput);
  CHECK_THROWS_AS(preset_matrix_field("twist", 2), CatalogMiss);
}

TEST_CASE("matrix field metadata matches linalg") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  for (const char* name : {"radial", "dilation(0.5)", "shear(2)", "rotation-scale(1.5,0.7)"}) {
    for (int n = 2; n <= 3; ++n) {
      const MatrixField f = preset_matrix_field(name, n);
      for (int t = 0; t < 100; ++t) {
        const double r = u(rng);
        const Matrix a = f.at(random_point(rng, n, r));
        CHECK(std::abs(f.norm(r) - op_norm(a)) <= 1e-10 * op_norm(a));
        CHECK(std::abs(f.inv_norm(r) - op_norm(inverse(a))) <= 1e-10 * f.inv_norm(r));
        CHECK(std::abs(f.det_inv(r) - std::abs(determinant(inverse(a)))) <= 1e-10 * f.det_inv(r));
      }
    }
  }
}

TEST_CASE("symbol and test-function presets") {
  ScalarField b = preset_symbol("power-beta(0.5)", 1);
  CHECK(b(Point(1, {4.0})) == doctest::Approx(2.0));
  CHECK(b(Point(1, {-4.0})) == doctest::Approx(2.0));
  CHECK(b.tags.lipschitz_beta.value() == 0.5);
  CHECK(b.analytic.at("lipschitz") == 1.0);

  ScalarField h = preset_symbol("halfspace", 1);
  CHECK(h(Point(1, {0.2})) == 1.0);
  CHECK(h(Point(1, {-0.2})) == 0.0);
  CHECK(h.tags.cmo);
  CHECK(h.analytic.at("cmo") == 0.5);

  ScalarField c = preset_symbol("constant(2)", 2);
  CHECK(c(Point(2, {1.0, 1.0})) == 2.0);
  CHECK(c.tags.constant);

  ScalarField s = preset_testfn("shell-indicator(0)", 1);
  CHECK(s(Point(1, {0.7})) == 1.0);
  CHECK(s(Point(1, {-0.7})) == 1.0);
  CHECK(s(Point(1, {1.5})) == 0.0);
  CHECK(s(Point(1, {1.0})) == 0.0);
  CHECK(s(Point(1, {0.5})) == 1.0);

  ScalarField pd = preset_testfn("power-decay(0.5)", 1);
  CHECK(pd(Point(1, {4.0})) == doctest::Approx(0.5));
  CHECK(pd(Point(1, {1e-4})) == 0.0);

  ScalarField z = preset_testfn("zero", 3);
  CHECK(z(Point(3, {1.0, 0.0, 0.0})) == 0.0);

  CHECK_THROWS_AS(preset_symbol("sawtooth", 1), CatalogMiss);
  CHECK_THROWS_AS(preset_testfn("shell-indicator", 1), CatalogMiss);
  CHECK_THROWS_AS(preset_testfn("shell-indicator(0.5)", 1), InvalidInput);
  CHECK(!kernel_preset_names().empty());
  CHECK(!testfn_preset_names().empty());
}

TEST_CASE("field combinators") {
  ScalarField s = preset_testfn("ball-indicator(1)", 2);
  ScalarField d = s.dilated(2.0);
  CHECK(d(Point(2, {0.4, 0.0})) == 1.0);
  CHECK(d(Point(2, {0.6, 0.0})) == 0.0);
  CHECK(d.support_hi == 0.5);
  ScalarField sc = s.scaled(-3.0);
  CHECK(sc(Point(2, {0.1, 0.1})) == -3.0);
  ScalarField b = preset_symbol("power-beta(0.5)", 2);
  ScalarField p = product(b, s);
  CHECK(p(Point(2, {0.25, 0.0})) == doctest::Approx(0.5));
  CHECK(p(Point(2, {4.0, 0.0})) == 0.0);
  ScalarField t = sum(b, s);
  CHECK(t(Point(2, {0.25, 0.0})) == doctest::Approx(1.5));
}
