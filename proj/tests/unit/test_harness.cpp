#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hausdorff/errors.hpp"
#include "hausdorff/harness.hpp"

using namespace hausdorff;

namespace {

std::vector<Scenario> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenarios(in, "test");
}

Scenario t32() {
  return parse(R"(
[scenario.t32]
theorem = T3.2
kernel = annulus(1,2)
b = power-beta(0.25)
f = shell-indicator(0)
p = 2
q = 4
beta = 0.25
)")
      .at(0);
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hausdorff_test_" + name);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto v = parse(R"(
# comment
[defaults]
n = 1
levels = 3
tol = 1e-7

[scenario.a]
theorem = T4.2
kernel = annulus(1,2)   # trailing comment
b = log-abs
f = gaussian-bump
q2 = 4/3
alpha1 = 0.25
dilations = 0.5, 1, 2^1

[scenario.b]
theorem = pointwise
n = 2
kernel = ball(1)
f = ball-indicator(1)
x = 0.5, 0
expected = 1.5
)");
  REQUIRE(v.size() == 2);
  CHECK(v[0].id == "a");
  CHECK(v[0].theorem == TheoremId::T4_2);
  CHECK(v[0].levels == 3);
  CHECK(v[0].tol == 1e-7);
  CHECK(v[0].exponents.q2 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(v[0].dilations == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(v[0].kernel == "annulus(1,2)");
  CHECK(v[1].n == 2);
  CHECK(v[1].grid.n == 2);
  CHECK(v[1].x == std::vector<double>{0.5, 0.0});
  REQUIRE(v[1].expected.has_value());
  CHECK(*v[1].expected == 1.5);
  CHECK(v[1].dilations == default_dilations());
  CHECK(default_dilations().size() == 9);
}

TEST_CASE("config strictness") {
  const std::string head = "[scenario.a]\ntheorem = T3.2\nkernel = annulus(1,2)\nb = halfspace\nf = zero\n";
  CHECK_NOTHROW(parse(head));
  CHECK_THROWS_AS(parse(head + "gamma = 2\n"), InvalidInput);
  CHECK_THROWS_AS(parse(head + "p = 2\np = 3\n"), InvalidInput);
  CHECK_THROWS_AS(parse(head + "p = two\n"), InvalidInput);
  CHECK_THROWS_AS(parse(head + "levels = 1.5\n"), InvalidInput);
  CHECK_THROWS_AS(parse(head + head), InvalidInput);
  CHECK_THROWS_AS(parse("p = 2\n" + head), InvalidInput);
  CHECK_THROWS_AS(parse("[section]\n"), InvalidInput);
  CHECK_THROWS_AS(parse("[scenario.a]\ntheorem = T3.2\nkernel = zero\nf = zero\n"), InvalidInput);
  CHECK_THROWS_AS(parse("[scenario.a]\ntheorem = T9\nkernel = zero\nb = halfspace\nf = zero\n"), InvalidInput);
  CHECK_THROWS_AS(parse(head + "dilations = 1, -2\n"), InvalidInput);
  CHECK_THROWS_AS(load_scenarios("/nonexistent/config.ini"), IoError);
}

TEST_CASE("defaults may be overridden") {
  const auto v = parse("[defaults]\np = 3\n[scenario.a]\ntheorem = T3.2\nkernel = zero\nb = halfspace\n"
                       "f = zero\np = 2\n");
  CHECK(v.at(0).exponents.p == 2.0);
}

TEST_CASE("validate scenario") {
  Scenario s = t32();
  CHECK(validate_scenario(s).empty());
  s.exponents.q = 3.0;
  CHECK(mentions(validate_scenario(s), "1/q = 1/p - beta/n"));

  Scenario t = parse(R"(
[scenario.t41]
theorem = T4.1
kernel = annulus(1,2)
b = log-abs
f = shell-indicator(0)
p = 2
q = 4
q1 = 2
q2 = 4/3
alpha1 = 0.25
alpha2 = 0
lambda = 0.25
)")
                   .at(0);
  CHECK(validate_scenario(t).empty());
  t.exponents.alpha1 = 0.3;
  CHECK(mentions(validate_scenario(t), "alpha1 = n/q + alpha2"));

  Scenario u = t32();
  u.kernel = "no-such-kernel";
  CHECK(mentions(validate_scenario(u), "kernel"));
  const auto r = run_scenario(u);
  CHECK(r.verdict == "fail");
  CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("zero scenarios pass with zero ratio") {
  Scenario s = t32();
  s.b = "constant(3)";
  const auto r = run_scenario(s);
  CHECK(r.verdict == "pass");
  CHECK(r.lhs_norm == 0.0);
  CHECK(r.ratio == 0.0);
  CHECK(r.b_norm == 0.0);

  Scenario z = t32();
  z.kernel = "zero";
  const auto rz = run_scenario(z);
  CHECK(rz.verdict == "pass");
  CHECK(rz.lhs_norm == 0.0);
  CHECK(rz.K_value == 0.0);
  for (const auto& row : refine_study(z, 2)) {
    CHECK(row.lhs == 0.0);
    CHECK(row.ratio == 0.0);
  }
}

TEST_CASE("theorem scenario invariants") {
  const Scenario s = t32();
  const auto r = run_scenario(s);
  CHECK(r.verdict == "pass");
  CHECK(r.ratio > 0.0);
  CHECK(r.ratio <= 1.0);
  CHECK(r.dilation_ratios.size() == 9);
  CHECK(r.refinement.size() == 2);
  CHECK(r.linearity_error <= kLinearityTol);
  CHECK(r.refinement_drift < kMaxDrift);
  CHECK(r.exponents == "p=2;q=4;beta=0.25");
  CHECK(r.ratio == doctest::Approx(r.lhs_norm / (r.K_value * r.b_norm * r.f_norm)).epsilon(1e-14));

  Scenario pinned = s;
  pinned.pinned_ratio = r.max_dilation_ratio / 2.0;
  const auto over = run_scenario(pinned);
  CHECK(over.verdict == "fail");
  CHECK(exit_code({over}) == 1);
}

TEST_CASE("refinement study") {
  const Scenario ln2 = parse(R"(
[scenario.hardy]
theorem = pointwise
kernel = interval(0,1)
f = interval-indicator(0,1)
x = 0.5
)")
                           .at(0);
  const auto rows = refine_study(ln2, 3);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows.back().lhs - std::numbers::ln2) <= 1e-6 * std::numbers::ln2);
  CHECK(run_scenario(ln2).verdict == "none");

  const Scenario s = t32();
  const auto a = refine_study(s, 2);
  const auto b = refine_study(s, 2);
  CHECK(a == b);
  CHECK(a[0].level == 0);
  CHECK(a[1].level == 1);
  CHECK_THROWS_AS(refine_study(s, 1), InvalidInput);
}

TEST_CASE("reports") {
  Scenario s = t32();
  s.dilations = {0.5, 1.0, 2.0};
  const auto reports = run_scenarios({s, s}, RunOptions{2, 0, std::nullopt});
  REQUIRE(reports.size() == 2);
  CHECK(reports[0] == reports[1]);

  const std::string csv = report_csv({reports[0]});
  CHECK(csv.rfind("scenario_id,theorem,n,kernel,field,b,f,exponents,K_value,b_norm,f_norm,lhs_norm,ratio,"
                  "max_dilation_ratio,refinement_drift,verdict\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("\"annulus(1,2)\"") != std::string::npos);

  VerificationReport odd = reports[0];
  odd.lhs_norm = std::numeric_limits<double>::infinity();
  odd.ratio = std::numeric_limits<double>::quiet_NaN();
  odd.diagnostics = {"a \"quoted\" note"};
  const auto back = parse_report_json(report_json({reports[0], odd}));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == reports[0]);
  CHECK(std::isinf(back[1].lhs_norm));
  CHECK(std::isnan(back[1].ratio));
  CHECK(back[1].diagnostics == odd.diagnostics);

  const auto path = temp_file("report.json");
  emit_report(reports, ReportFormat::Json, path.string());
  CHECK(read_report(path.string()) == reports);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(emit_report({}, ReportFormat::Csv, temp_file("empty.csv").string()), InvalidInput);
  CHECK_THROWS_AS(emit_report(reports, ReportFormat::Csv, "/nonexistent/dir/out.csv"), IoError);
  CHECK_THROWS_AS(parse_report_format("xml"), InvalidInput);
  CHECK_THROWS_AS(parse_report_json("{"), InvalidInput);
}

TEST_CASE("exit codes") {
  VerificationReport a, b, c;
  a.verdict = "pass";
  b.verdict = "inconclusive";
  c.verdict = "fail";
  CHECK(exit_code({a}) == 0);
  CHECK(exit_code({a, b}) == 2);
  CHECK(exit_code({a, b, c}) == 1);
  VerificationReport d;
  d.verdict = "none";
  CHECK(exit_code({a, d}) == 0);
}
