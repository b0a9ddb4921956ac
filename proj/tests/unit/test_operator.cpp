#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hausdorff/errors.hpp"
#include "hausdorff/operator.hpp"

using namespace hausdorff;

namespace {

OperatorSpec make(const std::string& kernel, const std::string& field, int n) {
  return OperatorSpec(preset_kernel(kernel, n), preset_matrix_field(field, n), n);
}

}  // namespace

TEST_CASE("one-dimensional closed form") {
  const OperatorSpec spec = make("interval(0,1)", "radial", 1);
  const ScalarField f = preset_testfn("interval-indicator(0,1)", 1);
  const double v = hausdorff_apply(spec, f, Point(1, {0.5}));
  CHECK(std::abs(v - std::numbers::ln2) < 1e-6 * std::numbers::ln2);
  // int_x^1 du/u for 0 < x < 1.
  for (double x : {0.1, 0.3, 0.9}) {
    CHECK(hausdorff_apply(spec, f, Point(1, {x})) == doctest::Approx(-std::log(x)).epsilon(1e-9));
  }
  CHECK(hausdorff_apply(spec, f, Point(1, {-0.5})) == 0.0);
  CHECK(hausdorff_apply(spec, preset_testfn("zero", 1), Point(1, {0.5})) == 0.0);
}

TEST_CASE("two-dimensional radial example") {
  const OperatorSpec spec = make("annulus(1,2)", "radial", 2);
  const ScalarField f = preset_testfn("ball-indicator(1)", 2);
  const double expected = 2.0 * std::numbers::pi * std::log(4.0 / 3.0);
  const Point x(2, {1.5 / std::sqrt(2.0), 1.5 / std::sqrt(2.0)});
  CHECK(std::abs(hausdorff_apply(spec, f, x) - expected) < 1e-6 * expected);
  CHECK(std::abs(hausdorff_radial(spec.kernel(), f, x) - expected) < 1e-6 * expected);
  OperatorOptions generic;
  generic.force_generic = true;
  CHECK(std::abs(hausdorff_apply(spec, f, x, generic) - expected) < 1e-6 * expected);
}

TEST_CASE("radial form agrees with the matrix-field form") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 1; n <= 3; ++n) {
    const OperatorSpec spec = make("power(0.5, annulus(0.5,2))", "radial", n);
    for (const char* fname : {"gaussian-bump", "shell-indicator(0)", "power-decay(0.3)"}) {
      const ScalarField f = preset_testfn(fname, n);
      for (int t = 0; t < 5; ++t) {
        Point x(n);
        for (int i = 0; i < n; ++i) x.c[i] = u(rng);
        const double a = hausdorff_apply(spec, f, x);
        const double r = hausdorff_radial(spec.kernel(), f, x);
        CHECK(std::abs(a - r) <= 1e-10 * std::max(1.0, std::abs(a)));
      }
    }
  }
  const ScalarField one = preset_testfn("constant(1)", 1);
  CHECK(hausdorff_radial(preset_kernel("annulus(1,2)", 1), one, Point(1, {0.7})) ==
        doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-10));
  CHECK(hausdorff_radial(preset_kernel("zero", 1), one, Point(1, {0.7})) == 0.0);
}

TEST_CASE("commutator closed form") {
  const OperatorSpec spec = make("interval(0,1)", "radial", 1);
  const ScalarField b = preset_symbol("power-beta(0.5)", 1);
  const ScalarField f = preset_testfn("interval-indicator(0,1)", 1);
  const double expected = std::numbers::ln2 - 1.0;
  const double v = commutator_apply(spec, b, f, Point(1, {0.25}));
  CHECK(std::abs(v - expected) < 1e-6 * std::abs(expected));
  // int_x^1 (sqrt(x) - sqrt(u)) du/u = -sqrt(x) ln x - 2 (1 - sqrt(x)).
  for (double x : {0.04, 0.5, 0.81}) {
    const double sx = std::sqrt(x);
    CHECK(commutator_apply(spec, b, f, Point(1, {x})) ==
          doctest::Approx(-sx * std::log(x) - 2.0 * (1.0 - sx)).epsilon(1e-9));
  }
}

TEST_CASE("commutator annihilates constants and is linear in f") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const OperatorSpec spec = make("annulus(1,2)", "shear(0.5)", 2);
  const ScalarField c = preset_symbol("constant(3)", 2);
  const ScalarField b = preset_symbol("power-beta(0.25)", 2);
  const ScalarField f = preset_testfn("gaussian-bump", 2);
  const ScalarField g = preset_testfn("ball-indicator(1.5)", 2);
  const ScalarField combo = sum(f.scaled(2.0), g.scaled(-0.5));
  for (int t = 0; t < 5; ++t) {
    const Point x(2, {u(rng), u(rng)});
    CHECK(std::abs(commutator_apply(spec, c, f, x)) < 1e-12);
    CHECK(commutator_apply(spec, b, f, x, {}, CommutatorForm::Both) ==
          doctest::Approx(commutator_apply(spec, b, f, x, {}, CommutatorForm::Single)).epsilon(1e-7));
    const double lhs = commutator_apply(spec, b, combo, x);
    const double rhs = 2.0 * commutator_apply(spec, b, f, x) - 0.5 * commutator_apply(spec, b, g, x);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(lhs)));
  }
  CHECK(commutator_apply(spec, b, preset_testfn("zero", 2), Point(2, {1.0, 0.0})) == 0.0);
}

TEST_CASE("operator errors") {
  CHECK_THROWS_AS(OperatorSpec(preset_kernel("annulus(1,2)", 2), preset_matrix_field("radial", 1), 2),
                  InvalidInput);
  const OperatorSpec spec = make("annulus(1,2)", "radial", 1);
  const ScalarField pd = preset_testfn("power-decay(0.5)", 1);
  const ScalarField log_abs = preset_symbol("log-abs", 1);
  CHECK_THROWS_AS(commutator_apply(spec, log_abs, pd, Point(1)), OriginExcluded);
  const OperatorSpec ball = make("ball(1)", "dilation(2)", 1);
  CHECK_THROWS_AS(hausdorff_apply(ball, preset_testfn("constant(1)", 1), Point(1, {0.5})),
                  IntegrandError);
}
