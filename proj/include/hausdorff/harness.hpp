#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hausdorff/constants.hpp"
#include "hausdorff/domain.hpp"

namespace hausdorff {

inline constexpr double kBudgetFactor = 1.25;
inline constexpr double kStabilityFactor = 4.0;
inline constexpr double kMaxDrift = 0.25;
inline constexpr double kLinearityTol = 1e-9;

struct Scenario {
  std::string id;
  TheoremId theorem = TheoremId::T3_2;
  int n = 1;
  std::string kernel;
  std::string field = "radial";
  /// Empty for pointwise operator (not commutator) evaluation.
  std::string b;
  std::string f;
  ExponentBundle exponents;
  RadialGrid grid;
  /// Dilations mu applied as f(mu x).
  std::vector<double> dilations;
  int levels = 2;
  std::optional<double> pinned_ratio;
  /// Evaluation point for pointwise scenarios.
  std::vector<double> x;
  std::optional<double> expected;
  double tol = 1e-6;
  double ladder_step = 1.0;
  int sample_points = 100;
};

/// Dilation ladder 2^{-4}, ..., 2^{4}.
std::vector<double> default_dilations();

/// Parses the scenario file format: `[scenario.NAME]` sections of
/// `key = value` lines, an optional leading `[defaults]` section, `#`
/// comments. Unknown keys and sections are errors.
std::vector<Scenario> parse_scenarios(std::istream& in, const std::string& source = "<input>");
std::vector<Scenario> load_scenarios(const std::string& path);

/// Every violated hypothesis of the owning theorem plus preset lookup
/// failures; empty when the scenario can run.
std::vector<std::string> validate_scenario(const Scenario& s);

struct RefinementRow {
  int level = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool operator==(const RefinementRow&) const = default;
};

struct VerificationReport {
  std::string scenario_id;
  std::string theorem;
  int n = 1;
  std::string kernel, field, b, f;
  std::string exponents;
  double K_value = 0.0;
  double b_norm = 0.0;
  double f_norm = 0.0;
  double lhs_norm = 0.0;
  double ratio = 0.0;
  double max_dilation_ratio = 0.0;
  double refinement_drift = 0.0;
  std::string verdict;
  std::vector<std::pair<double, double>> dilation_ratios;
  std::vector<RefinementRow> refinement;
  double linearity_error = 0.0;
  std::vector<std::string> diagnostics;
  bool operator==(const VerificationReport&) const = default;
};

struct RunOptions {
  int threads = 1;
  std::uint64_t seed = 0;
  /// Overrides every scenario's base tolerance when set.
  std::optional<double> tol;
};

VerificationReport run_scenario(const Scenario& s, const RunOptions& opts = {});

/// Runs the scenarios in parallel; the result order follows the input.
std::vector<VerificationReport> run_scenarios(const std::vector<Scenario>& scenarios,
                                              const RunOptions& opts = {});

/// Rows (level, LHS, RHS, ratio) at dilation 1 for levels 0..levels-1.
std::vector<RefinementRow> refine_study(const Scenario& s, int levels, const RunOptions& opts = {});

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(const std::string& text);

std::string flatten_exponents(TheoremId id, const ExponentBundle& e);
std::string report_csv(const std::vector<VerificationReport>& reports);
std::string report_json(const std::vector<VerificationReport>& reports);
std::vector<VerificationReport> parse_report_json(const std::string& text);
/// Throws IoError when the path cannot be written and InvalidInput for an
/// empty report list.
void emit_report(const std::vector<VerificationReport>& reports, ReportFormat format,
                 const std::string& path);
std::vector<VerificationReport> read_report(const std::string& path);

/// 0 when every verdict is pass or none, 2 when any is inconclusive and
/// none failed, 1 otherwise.
int exit_code(const std::vector<VerificationReport>& reports);

}  // namespace hausdorff
