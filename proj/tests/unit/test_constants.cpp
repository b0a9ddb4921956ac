#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hausdorff/constants.hpp"
#include "hausdorff/errors.hpp"

using namespace hausdorff;

namespace {

ConstantSpec spec_for(int which, const std::string& kernel, const std::string& field, int n,
                      ExponentBundle e) {
  return ConstantSpec{which, e, preset_kernel(kernel, n), preset_matrix_field(field, n), n};
}

ExponentBundle t41_bundle() {
  ExponentBundle e;
  e.p = 2.0;
  e.q = 4.0;
  e.q1 = 2.0;
  e.q2 = 4.0 / 3.0;
  e.alpha2 = 0.0;
  e.alpha1 = 0.25;
  e.lambda = 0.5;
  return e;
}

}  // namespace

TEST_CASE("growth function branches") {
  const Matrix two = Matrix::scalar(2, 2.0);
  CHECK(g_alpha_lambda(two, 0.3, 0.3) == 1.0);
  CHECK(g_alpha_lambda(two, 1.5, 0.5) == 0.5);
  CHECK(g_alpha_lambda(two, 0.5, 2.5) == 4.0);
  const Matrix shear(2, {1, 1, 0, 1});
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(g_tilde_alpha(shear, 0.0) == doctest::Approx(1.0 + std::log2(phi * phi)).epsilon(1e-12));
  CHECK(g_tilde_alpha(shear, 0.0) == doctest::Approx(2.3885).epsilon(1e-4));
  for (double a : {-1.0, 0.0, 0.7}) {
    CHECK(g_tilde_alpha(shear, a) == g_alpha_lambda(shear, a, 0.0));
    CHECK(g_tilde_alpha(two, a) == g_alpha_lambda(two, a, 0.0));
    CHECK(g_tilde_alpha(Matrix::identity(3), a) == 1.0);
  }
  CHECK(g_tilde_alpha(two, 1.0) == 0.5);
  CHECK(g_tilde_alpha(two, -1.0) == 2.0);
  CHECK_THROWS_AS(g_alpha_lambda(Matrix(2), 1.0, 0.0), SingularMatrix);
}

TEST_CASE("log growth factor") {
  CHECK(log_growth_factor(1.0) == std::numbers::ln2);
  CHECK(log_growth_factor(1.0 - 1e-15) == doctest::Approx(std::numbers::ln2));
  CHECK(log_growth_factor(0.5) == doctest::Approx(std::log(4.0)));
  CHECK(log_growth_factor(4.0) == doctest::Approx(std::log(8.0)));
}

TEST_CASE("pointwise weights") {
  const KernelSpec k = preset_kernel("annulus(1,4)", 1);
  const Point y(1, {2.0});
  CHECK(phi_weight(y, k, preset_matrix_field("dilation(1)", 1), 0.3) == doctest::Approx(0.5 * 2.0));
  const double expected = std::sqrt(2.0) * (1.0 + 1.0 / std::sqrt(2.0)) / 2.0;
  CHECK(phi_weight(y, k, preset_matrix_field("radial", 1), 0.5) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(varphi_weight(y, k, preset_matrix_field("dilation(1)", 1), 2.0) ==
        doctest::Approx(std::numbers::ln2 / 2.0));
}

TEST_CASE("hypothesis checks") {
  ExponentBundle e;
  e.p = 2.0;
  e.beta = 0.25;
  e.q = 4.0;
  CHECK(check_hypotheses(TheoremId::T3_2, e, 1).empty());
  e.q = 3.0;
  auto v = check_hypotheses(TheoremId::T3_2, e, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "1/q = 1/p - beta/n");

  ExponentBundle t = t41_bundle();
  CHECK(check_hypotheses(TheoremId::T4_1, t, 1).empty());
  t.alpha1 = 0.5;
  auto w = check_hypotheses(TheoremId::T4_1, t, 1);
  REQUIRE(!w.empty());
  CHECK(w[0] == "alpha1 = n/q + alpha2");
  CHECK_THROWS_AS(parse_theorem("T9.9"), InvalidInput);
  CHECK(theorem_label(parse_theorem("T3.4")) == "T3.4");
  CHECK(theorem_constant(TheoremId::T4_2).value() == 7);
  CHECK(!theorem_constant(TheoremId::L2_7).has_value());
}

TEST_CASE("K2 closed form") {
  ExponentBundle e;
  e.p = 2.0;
  e.beta = 0.25;
  e.q = 4.0;
  const ConstantResult k = k_constant(spec_for(2, "annulus(1,2)", "radial", 1, e));
  const double expected = 4.0 * std::sqrt(2.0) + 8.0 * std::pow(2.0, 0.25) - 12.0;
  CHECK(std::abs(k.value - expected) < 1e-6 * expected);
  CHECK_FALSE(k.divergence_suspect);

  e.q = 3.0;
  try {
    k_constant(spec_for(2, "annulus(1,2)", "radial", 1, e));
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& err) {
    CHECK(std::string(err.what()).find("1/q = 1/p - beta/n") != std::string::npos);
  }
}

TEST_CASE("K6 with the identity field") {
  const ConstantResult k = k_constant(spec_for(6, "annulus(1,2)", "dilation(1)", 1, t41_bundle()));
  CHECK(k.value == doctest::Approx(2.0 * std::numbers::ln2 * std::numbers::ln2).epsilon(1e-9));
}

TEST_CASE("zero kernel and monotonicity in the kernel") {
  ExponentBundle e;
  e.p = 2.0;
  e.beta = 0.25;
  e.q = 4.0;
  CHECK(k_constant(spec_for(2, "zero", "radial", 1, e)).value == 0.0);
  double prev = 0.0;
  for (const char* kern : {"annulus(1,1.5)", "annulus(1,2)", "annulus(0.5,2)", "annulus(0.5,3)"}) {
    const double v = k_constant(spec_for(2, kern, "radial", 1, e)).value;
    CHECK(v >= prev);
    prev = v;
  }
  ExponentBundle t = t41_bundle();
  t.alpha1 = 0.5;
  prev = 0.0;
  for (const char* kern : {"annulus(1,1.5)", "annulus(1,2)", "annulus(0.5,2)"}) {
    const double v = k_constant(spec_for(7, kern, "shear(1)", 2, t)).value;
    CHECK(v >= prev);
    prev = v;
  }
}
