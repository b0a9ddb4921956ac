#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hausdorff/catalog.hpp"
#include "hausdorff/constants.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/errors.hpp"
#include "hausdorff/harness.hpp"
#include "hausdorff/linalg.hpp"
#include "hausdorff/norms.hpp"
#include "hausdorff/operator.hpp"

namespace py = pybind11;
using namespace hausdorff;

namespace {

Point to_point(const std::vector<double>& x) {
  if (x.empty() || x.size() > 3) throw InvalidInput("points need 1 to 3 coordinates");
  Point p(static_cast<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) p.c[i] = x[i];
  return p;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1 || n > 3) throw InvalidInput("matrices must be 1x1, 2x2 or 3x3");
  Matrix a(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw InvalidInput("matrix must be square");
    for (int j = 0; j < n; ++j) a(i, j) = rows[i][j];
  }
  return a;
}

OperatorSpec make_spec(const std::string& kernel, const std::string& field, int n) {
  return OperatorSpec(preset_kernel(kernel, n), preset_matrix_field(field, n), n);
}

ExponentBundle bundle(const py::dict& kw) {
  ExponentBundle e;
  const std::pair<const char*, double*> slots[] = {
      {"p", &e.p},           {"q", &e.q},           {"p1", &e.p1},         {"p2", &e.p2},
      {"q1", &e.q1},         {"q2", &e.q2},         {"alpha", &e.alpha},   {"alpha1", &e.alpha1},
      {"alpha2", &e.alpha2}, {"lambda", &e.lambda}, {"beta", &e.beta}};
  for (const auto& [key, value] : kw) {
    const std::string name = py::str(key);
    bool known = false;
    for (const auto& [slot_name, slot] : slots) {
      if (name == slot_name) {
        *slot = value.cast<double>();
        known = true;
      }
    }
    if (!known) throw InvalidInput("unknown exponent '" + name + "'");
  }
  return e;
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["scenario_id"] = r.scenario_id;
  d["theorem"] = r.theorem;
  d["n"] = r.n;
  d["kernel"] = r.kernel;
  d["field"] = r.field;
  d["b"] = r.b;
  d["f"] = r.f;
  d["exponents"] = r.exponents;
  d["K_value"] = r.K_value;
  d["b_norm"] = r.b_norm;
  d["f_norm"] = r.f_norm;
  d["lhs_norm"] = r.lhs_norm;
  d["ratio"] = r.ratio;
  d["max_dilation_ratio"] = r.max_dilation_ratio;
  d["refinement_drift"] = r.refinement_drift;
  d["verdict"] = r.verdict;
  d["dilation_ratios"] = r.dilation_ratios;
  py::list rows;
  for (const auto& row : r.refinement) {
    rows.append(py::make_tuple(row.level, row.lhs, row.rhs, row.ratio));
  }
  d["refinement"] = rows;
  d["linearity_error"] = r.linearity_error;
  d["diagnostics"] = r.diagnostics;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hausdorff operators, their commutators, function-space norms and theorem constants.";

  static py::exception<Error> base(m, "HausdorffError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
  py::register_exception<OriginExcluded>(m, "OriginExcluded", base.ptr());
  py::register_exception<CatalogMiss>(m, "CatalogMiss", base.ptr());
  py::register_exception<IntegrandError>(m, "IntegrandError", base.ptr());
  py::register_exception<DomainRestriction>(m, "DomainRestriction", base.ptr());
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def(
      "apply",
      [](const std::string& kernel, const std::string& f, const std::vector<double>& x,
         const std::string& field, double tol) {
        const Point p = to_point(x);
        OperatorOptions oo;
        oo.tol = tol;
        return hausdorff_apply(make_spec(kernel, field, p.n), preset_testfn(f, p.n), p, oo);
      },
      py::arg("kernel"), py::arg("f"), py::arg("x"), py::arg("field") = "radial", py::arg("tol") = kDefaultTol,
      "Operator value at x for catalog presets.");

  m.def(
      "commutator",
      [](const std::string& kernel, const std::string& b, const std::string& f, const std::vector<double>& x,
         const std::string& field, const std::string& form, double tol) {
        const Point p = to_point(x);
        OperatorOptions oo;
        oo.tol = tol;
        CommutatorForm cf = CommutatorForm::Both;
        if (form == "difference") {
          cf = CommutatorForm::Difference;
        } else if (form == "single") {
          cf = CommutatorForm::Single;
        } else if (form != "both") {
          throw InvalidInput("form must be both, difference or single");
        }
        return commutator_apply(make_spec(kernel, field, p.n), preset_symbol(b, p.n), preset_testfn(f, p.n), p,
                                oo, cf);
      },
      py::arg("kernel"), py::arg("b"), py::arg("f"), py::arg("x"), py::arg("field") = "radial",
      py::arg("form") = "both", py::arg("tol") = kDefaultTol);

  m.def(
      "norm",
      [](const std::string& which, const std::string& f, int n, bool symbol, int k_min, int k_max,
         int radial_points, double tol, const py::kwargs& kw) {
        NormParams np;
        np.which = parse_norm_kind(which);
        np.grid = RadialGrid{n, k_min, k_max, radial_points, 64};
        np.tol = tol;
        const ExponentBundle e = bundle(kw);
        np.p = e.p;
        np.q = e.q;
        np.alpha = e.alpha;
        np.lambda = e.lambda;
        np.beta = e.beta;
        return evaluate_norm(symbol ? preset_symbol(f, n) : preset_testfn(f, n), np);
      },
      py::arg("which"), py::arg("f"), py::arg("n") = 1, py::arg("symbol") = false, py::arg("k_min") = -8,
      py::arg("k_max") = 8, py::arg("radial_points") = 32, py::arg("tol") = kDefaultTol,
      "One norm of a catalog function; exponents p, q, alpha, lambda, beta as keywords.");

  m.def(
      "constant",
      [](int which, const std::string& kernel, const std::string& field, int n, double tol, const py::kwargs& kw) {
        const ConstantResult r =
            k_constant(ConstantSpec{which, bundle(kw), preset_kernel(kernel, n), preset_matrix_field(field, n), n},
                       tol);
        py::dict d;
        d["value"] = r.value;
        d["error_estimate"] = r.error_estimate;
        d["divergence_suspect"] = r.divergence_suspect;
        return d;
      },
      py::arg("which"), py::arg("kernel"), py::arg("field") = "radial", py::arg("n") = 1,
      py::arg("tol") = kDefaultTol);

  m.def(
      "check_hypotheses",
      [](const std::string& theorem, int n, const py::kwargs& kw) {
        return check_hypotheses(parse_theorem(theorem), bundle(kw), n);
      },
      py::arg("theorem"), py::arg("n") = 1);

  m.def("op_norm", [](const std::vector<std::vector<double>>& a) { return op_norm(to_matrix(a)); });
  m.def("determinant", [](const std::vector<std::vector<double>>& a) { return determinant(to_matrix(a)); });
  m.def("det_bounds", [](const std::vector<std::vector<double>>& a) {
    const DetBounds d = check_det_bounds(to_matrix(a));
    return py::make_tuple(d.lhs, d.mid, d.rhs, d.holds);
  });
  m.def("shell_cover", [](const std::vector<std::vector<double>>& a) {
    const ShellCover c = shell_cover(to_matrix(a));
    return py::make_tuple(c.first(), c.last());
  });
  m.def("shell_index", [](const std::vector<double>& x) { return shell_index(to_point(x)); });
  m.def("g_alpha_lambda", [](const std::vector<std::vector<double>>& a, double alpha, double lambda) {
    return g_alpha_lambda(to_matrix(a), alpha, lambda);
  });

  m.def(
      "verify",
      [](const std::string& config, int threads, std::uint64_t seed) {
        std::vector<VerificationReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_scenarios(load_scenarios(config), RunOptions{threads, seed, std::nullopt});
        }
        py::list out;
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      py::arg("config"), py::arg("threads") = 1, py::arg("seed") = 0,
      "Run every scenario of a config file; one dict per scenario.");

  m.def(
      "verify_csv",
      [](const std::string& config, int threads) {
        py::gil_scoped_release release;
        return report_csv(run_scenarios(load_scenarios(config), RunOptions{threads, 0, std::nullopt}));
      },
      py::arg("config"), py::arg("threads") = 1);

  m.def("kernel_presets", &kernel_preset_names);
  m.def("field_presets", &field_preset_names);
  m.def("symbol_presets", &symbol_preset_names);
  m.def("testfn_presets", &testfn_preset_names);
}
