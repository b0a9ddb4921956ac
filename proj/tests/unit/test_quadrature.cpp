#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hausdorff/errors.hpp"
#include "hausdorff/quadrature.hpp"

using namespace hausdorff;

TEST_CASE("radial integrals") {
  auto a = integrate_radial([](double r) { return 1.0 / r; }, 1.0, 2.0);
  CHECK(std::abs(a.value - std::numbers::ln2) < 1e-9);
  CHECK(a.error_estimate >= 0.0);
  CHECK(a.nodes_used >= 1);
  auto b = integrate_radial([](double r) { return 1.0 / std::sqrt(r); }, 1.0, 2.0);
  CHECK(std::abs(b.value - 2.0 * (std::sqrt(2.0) - 1.0)) < 1e-9);
  auto c = integrate_radial([](double) { return 0.0; }, 0.0, 1.0);
  CHECK(c.value == 0.0);
}

TEST_CASE("breakpoints make indicators exact") {
  const double bp[] = {0.3, 0.7};
  RadialOptions opts;
  opts.breakpoints = bp;
  auto ind = [](double r) { return (r >= 0.3 && r <= 0.7) ? 1.0 : 0.0; };
  auto v = integrate_radial(ind, 0.0, 1.0, opts);
  CHECK(std::abs(v.value - 0.4) < 1e-14);
  auto w = integrate_radial([](double r) { return std::sqrt(r); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(w.value - 2.0 / 3.0) < 1e-10);
}

TEST_CASE("non-finite samples are reported") {
  try {
    integrate_radial([](double r) { return r > 0.5 ? std::nan("") : 1.0; }, 0.0, 1.0);
    FAIL("expected IntegrandError");
  } catch (const IntegrandError& e) {
    CHECK(e.node() > 0.5);
  }
}

TEST_CASE("tighter tolerance does not hurt") {
  auto g = [](double r) { return std::exp(-r) * std::sin(3.0 * r); };
  const double exact = (3.0 - std::exp(-4.0) * (std::sin(12.0) + 3.0 * std::cos(12.0))) / 10.0;
  double prev = 1.0;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const double err = std::abs(integrate_radial(g, 0.0, 4.0, tol).value - exact);
    CHECK(err <= std::max(prev, 1e-14));
    prev = err;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("annulus integrals") {
  auto one = integrate_annulus([](const Point&) { return 1.0; }, 2, 1.0, 2.0);
  CHECK(std::abs(one.value - 3.0 * std::numbers::pi) < 1e-8);
  auto inv = integrate_annulus([](const Point& y) { return 1.0 / (y.norm() * y.norm()); }, 2, 1.0, 2.0);
  CHECK(std::abs(inv.value - 2.0 * std::numbers::pi * std::numbers::ln2) < 1e-8);
  for (int n = 1; n <= 3; ++n) {
    auto odd = integrate_annulus([](const Point& y) { return y.c[0] * std::exp(y.norm()); }, n, 0.5, 3.0);
    CHECK(std::abs(odd.value) < 1e-10);
  }
  auto ball3 = integrate_annulus([](const Point&) { return 1.0; }, 3, 0.0, 1.0);
  CHECK(std::abs(ball3.value - 4.0 * std::numbers::pi / 3.0) < 1e-8);
  auto quad3 = integrate_annulus([](const Point& y) { return y.c[2] * y.c[2]; }, 3, 0.0, 1.0);
  CHECK(std::abs(quad3.value - 4.0 * std::numbers::pi / 15.0) < 1e-8);
  auto seg = integrate_annulus([](const Point& y) { return y.c[0] > 0 ? 1.0 : 0.0; }, 1, 1.0, 3.0);
  CHECK(seg.value == doctest::Approx(2.0));
}

TEST_CASE("angular rules") {
  for (int n = 1; n <= 3; ++n) {
    const AngularRule r = angular_rule(n, default_angular_order(n));
    double s = 0.0;
    for (double w : r.weights) s += w;
    const double area = n == 1 ? 2.0 : (n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
    CHECK(s == doctest::Approx(area).epsilon(1e-13));
  }
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  double m4 = 0.0;
  for (int i = 0; i < 5; ++i) m4 += w[i] * std::pow(x[i], 8);
  CHECK(m4 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}
