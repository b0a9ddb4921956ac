#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hausdorff/catalog.hpp"
#include "hausdorff/constants.hpp"
#include "hausdorff/errors.hpp"
#include "hausdorff/harness.hpp"
#include "hausdorff/norms.hpp"
#include "hausdorff/operator.hpp"

using namespace hausdorff;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_reports(const std::vector<VerificationReport>& reports, const std::string& format,
                   const std::string& out) {
  const ReportFormat fmt = parse_report_format(format);
  if (out.empty() || out == "-") {
    std::cout << (fmt == ReportFormat::Csv ? report_csv(reports) : report_json(reports));
  } else {
    emit_report(reports, fmt, out);
  }
}

Point make_point(const std::vector<double>& x, int n) {
  if (static_cast<int>(x.size()) != n) throw InvalidInput("--x needs exactly n coordinates");
  Point p(n);
  for (int i = 0; i < n; ++i) p.c[i] = x[i];
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff operators, commutators and their norm inequalities"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol = kDefaultTol;
  int threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--tol", tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", seed, "Seed for randomized searches");

  int n = 1;
  std::string kernel, field = "radial", b, f;
  std::vector<double> x;
  auto* eval = app.add_subcommand("eval", "Operator or commutator value at a point");
  eval->add_option("--kernel", kernel)->required();
  eval->add_option("--field", field);
  eval->add_option("--n", n);
  eval->add_option("--f", f)->required();
  eval->add_option("--b", b, "Symbol; evaluates the commutator when given");
  eval->add_option("--x", x)->required()->delimiter(',');

  std::string norm_name = "lp";
  NormParams np;
  auto* norm = app.add_subcommand("norm", "One norm of one preset function");
  norm->add_option("--norm", norm_name)->required();
  norm->add_option("--f", f)->required();
  norm->add_option("--n", n);
  norm->add_option("--p", np.p);
  norm->add_option("--q", np.q);
  norm->add_option("--alpha", np.alpha);
  norm->add_option("--lambda", np.lambda);
  norm->add_option("--beta", np.beta);
  norm->add_option("--k-min", np.grid.k_min);
  norm->add_option("--k-max", np.grid.k_max);
  norm->add_option("--radial-points", np.grid.radial_points_per_shell);
  bool symbol = false;
  norm->add_flag("--symbol", symbol, "Treat --f as a symbol preset");

  int which = 2;
  ExponentBundle e;
  auto* constant = app.add_subcommand("constant", "One theorem constant K1..K7");
  constant->add_option("--which", which)->required()->check(CLI::Range(1, 7));
  constant->add_option("--kernel", kernel)->required();
  constant->add_option("--field", field);
  constant->add_option("--n", n);
  for (auto [name, slot] : std::initializer_list<std::pair<const char*, double*>>{
           {"--p", &e.p}, {"--q", &e.q}, {"--p1", &e.p1}, {"--p2", &e.p2}, {"--q1", &e.q1},
           {"--q2", &e.q2}, {"--alpha", &e.alpha}, {"--alpha1", &e.alpha1}, {"--alpha2", &e.alpha2},
           {"--lambda", &e.lambda}, {"--beta", &e.beta}}) {
    constant->add_option(name, *slot);
  }

  std::string config, out, format = "csv";
  auto* verify = app.add_subcommand("verify", "Run every scenario of a config file");
  verify->add_option("--config", config)->required();
  verify->add_option("--out", out, "Report path (stdout when omitted)");
  verify->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::string scenario;
  int levels = 3;
  auto* study = app.add_subcommand("study", "Refinement table of one scenario");
  study->add_option("--config", config)->required();
  study->add_option("--scenario", scenario)->required();
  study->add_option("--levels", levels)->check(CLI::Range(2, 8));

  std::string input;
  auto* report = app.add_subcommand("report", "Re-emit a saved JSON report");
  report->add_option("--in", input)->required();
  report->add_option("--out", out);
  report->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  RunOptions run{threads, seed, std::nullopt};
  if (app.get_option("--tol")->count() > 0) run.tol = tol;

  try {
    if (*eval) {
      OperatorSpec spec(preset_kernel(kernel, n), preset_matrix_field(field, n), n);
      const ScalarField fn = preset_testfn(f, n);
      const Point p = make_point(x, n);
      OperatorOptions oo;
      oo.tol = tol;
      if (b.empty()) {
        std::cout << num(hausdorff_apply(spec, fn, p, oo)) << "\n";
      } else {
        const ScalarField sym = preset_symbol(b, n);
        std::cout << num(commutator_apply(spec, sym, fn, p, oo, CommutatorForm::Both)) << "\n";
      }
    } else if (*norm) {
      np.which = parse_norm_kind(norm_name);
      np.grid.n = n;
      np.tol = tol;
      np.seed = seed;
      np.threads = threads;
      const ScalarField fn = symbol ? preset_symbol(f, n) : preset_testfn(f, n);
      std::cout << num(evaluate_norm(fn, np)) << "\n";
    } else if (*constant) {
      ConstantSpec cs{which, e, preset_kernel(kernel, n), preset_matrix_field(field, n), n};
      const ConstantResult k = k_constant(cs, tol);
      std::cout << num(k.value) << (k.divergence_suspect ? " divergence-suspect" : "") << "\n";
    } else if (*verify) {
      const auto reports = run_scenarios(load_scenarios(config), run);
      write_reports(reports, format, out);
      return exit_code(reports);
    } else if (*study) {
      for (const Scenario& s : load_scenarios(config)) {
        if (s.id != scenario) continue;
        std::cout << "level,lhs,rhs,ratio\n";
        for (const auto& row : refine_study(s, levels, run)) {
          std::cout << row.level << ',' << num(row.lhs) << ',' << num(row.rhs) << ',' << num(row.ratio) << "\n";
        }
        return 0;
      }
      throw InvalidInput("no scenario named '" + scenario + "' in " + config);
    } else if (*report) {
      const auto reports = read_report(input);
      write_reports(reports, format, out);
      return exit_code(reports);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
