#include "hausdorff/constants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hausdorff/errors.hpp"

namespace hausdorff {
namespace {

constexpr double kEqTol = 1e-9;
constexpr double kBranchTol = 1e-12;

bool approx_equal(double a, double b) { return std::abs(a - b) <= kEqTol * std::max(1.0, std::abs(b)); }

struct MatrixFactors {
  double norm;      // ||A||
  double inv_norm;  // ||A^{-1}||
  double det_inv;   // |det A^{-1}|
};

MatrixFactors factors_at(const MatrixField& field, double r) {
  if (field.kind == FieldKind::Radial) {
    return {1.0 / r, r, std::pow(r, field.n)};
  }
  const Matrix& a = field.constant_matrix;
  const Matrix inv = inverse(a);
  return {op_norm(a), op_norm(inv), std::abs(determinant(inv))};
}

double g_from_norms(double norm, double inv_norm, double alpha, double lambda) {
  const double d = alpha - lambda;
  if (std::abs(d) <= kBranchTol) return 1.0 + std::log2(norm * inv_norm);
  if (d > 0.0) return std::pow(inv_norm, d);
  return std::pow(norm, -d);
}

}  // namespace

TheoremId parse_theorem(const std::string& text) {
  static const std::pair<const char*, TheoremId> table[] = {
      {"T3.1", TheoremId::T3_1}, {"T3.2", TheoremId::T3_2}, {"T3.3", TheoremId::T3_3},
      {"T3.4", TheoremId::T3_4}, {"T3.5", TheoremId::T3_5}, {"T4.1", TheoremId::T4_1},
      {"T4.2", TheoremId::T4_2}, {"L2.7", TheoremId::L2_7}, {"pointwise", TheoremId::Pointwise},
      {"open-cmo-lp", TheoremId::OpenCmoLp}};
  for (const auto& [name, id] : table)
    if (text == name) return id;
  throw InvalidInput("unknown theorem id '" + text +
                     "'; valid: T3.1 T3.2 T3.3 T3.4 T3.5 T4.1 T4.2 L2.7 pointwise open-cmo-lp");
}

std::string theorem_label(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1: return "T3.1";
    case TheoremId::T3_2: return "T3.2";
    case TheoremId::T3_3: return "T3.3";
    case TheoremId::T3_4: return "T3.4";
    case TheoremId::T3_5: return "T3.5";
    case TheoremId::T4_1: return "T4.1";
    case TheoremId::T4_2: return "T4.2";
    case TheoremId::L2_7: return "L2.7";
    case TheoremId::Pointwise: return "pointwise";
    case TheoremId::OpenCmoLp: return "open-cmo-lp";
  }
  return "?";
}

std::optional<int> theorem_constant(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1: return 1;
    case TheoremId::T3_2: return 2;
    case TheoremId::T3_3: return 3;
    case TheoremId::T3_4: return 4;
    case TheoremId::T3_5: return 5;
    case TheoremId::T4_1: return 6;
    case TheoremId::T4_2: return 7;
    default: return std::nullopt;
  }
}

std::vector<std::string> check_hypotheses(TheoremId id, const ExponentBundle& e, int n) {
  std::vector<std::string> v;
  auto need = [&v](bool ok, const char* what) {
    if (!ok) v.emplace_back(what);
  };
  const double nd = n;
  switch (id) {
    case TheoremId::T3_1:
      need(e.beta > 0.0 && e.beta < 1.0, "0 < beta < 1");
      need(e.p > 1.0, "1 < p");
      need(e.p < nd / e.beta, "p < n/beta");
      need(e.lambda > 0.0, "0 < lambda");
      need(e.lambda < nd - e.beta * e.p, "lambda < n - beta*p");
      need(approx_equal(1.0 / e.q, 1.0 / e.p - e.beta / (nd - e.lambda)),
           "1/q = 1/p - beta/(n - lambda)");
      break;
    case TheoremId::T3_2:
      need(e.beta > 0.0 && e.beta < 1.0, "0 < beta < 1");
      need(e.p > 1.0, "1 < p");
      need(e.p < nd / e.beta, "p < n/beta");
      need(approx_equal(1.0 / e.q, 1.0 / e.p - e.beta / nd), "1/q = 1/p - beta/n");
      break;
    case TheoremId::T3_3:
    case TheoremId::T3_4: {
      const double lam = id == TheoremId::T3_3 ? e.lambda : 0.0;
      need(e.p1 > 0.0, "0 < p1");
      need(e.p1 <= e.p2, "p1 <= p2");
      need(e.beta > 0.0 && e.beta < 1.0, "0 < beta < 1");
      need(e.q1 > 1.0, "1 < q1");
      need(e.q1 < nd / e.beta, "q1 < n/beta");
      need(approx_equal(1.0 / e.q1 - 1.0 / e.q2, e.beta / nd), "1/q1 - 1/q2 = beta/n");
      if (id == TheoremId::T3_3) need(e.lambda > 0.0, "lambda > 0");
      if (id == TheoremId::T3_3) {
        need(-nd / e.q1 + e.beta + lam < e.alpha, "-n/q1 + beta + lambda < alpha");
        need(e.alpha < nd * (1.0 - 1.0 / e.q1) + lam, "alpha < n(1 - 1/q1) + lambda");
      } else {
        need(-nd / e.q1 + e.beta < e.alpha, "-n/q1 + beta < alpha");
        need(e.alpha < nd * (1.0 - 1.0 / e.q1), "alpha < n(1 - 1/q1)");
      }
      break;
    }
    case TheoremId::T3_5:
      need(e.beta > 0.0 && e.beta < 1.0, "0 < beta < 1");
      need(e.p > 1.0, "1 < p");
      break;
    case TheoremId::T4_1:
    case TheoremId::T4_2:
      need(e.p > 1.0, "1 < p");
      need(e.q > 1.0, "1 < q");
      need(e.q1 > 1.0, "1 < q1");
      need(e.q2 > 1.0, "1 < q2");
      need(approx_equal(1.0 / e.q2, 1.0 / e.q + 1.0 / e.q1), "1/q2 = 1/q + 1/q1");
      if (id == TheoremId::T4_1) need(e.lambda > 0.0, "lambda > 0");
      need(approx_equal(e.alpha1, nd / e.q + e.alpha2), "alpha1 = n/q + alpha2");
      break;
    case TheoremId::L2_7:
      need(e.beta > 0.0 && e.beta < 1.0, "0 < beta < 1");
      break;
    case TheoremId::OpenCmoLp:
      need(e.p > 1.0, "1 < p");
      need(e.q > 1.0, "1 < q");
      break;
    case TheoremId::Pointwise:
      break;
  }
  return v;
}

double g_alpha_lambda(const Matrix& a, double alpha, double lambda) {
  const Matrix inv = inverse(a);
  return g_from_norms(op_norm(a), op_norm(inv), alpha, lambda);
}

double g_tilde_alpha(const Matrix& a, double alpha) { return g_alpha_lambda(a, alpha, 0.0); }

double log_growth_factor(double a_norm) {
  if (!(a_norm > 0.0)) throw InvalidInput("matrix norm must be positive");
  return a_norm < 1.0 ? std::log(2.0 / a_norm) : std::log(2.0 * a_norm);
}

double phi_weight(const Point& y, const KernelSpec& kernel, const MatrixField& field, double beta) {
  const double phi = std::abs(kernel(y));
  if (phi == 0.0) return 0.0;
  const int n = y.n;
  const Matrix a = field.at(y);
  const double det_inv = std::abs(determinant(inverse(a)));
  const double nrm = op_norm(a);
  return phi / std::pow(y.norm(), n) * std::max(1.0, std::pow(det_inv, beta / n)) *
         (1.0 + std::pow(nrm, beta));
}

double varphi_weight(const Point& y, const KernelSpec& kernel, const MatrixField& field, double q1) {
  const double phi = std::abs(kernel(y));
  if (phi == 0.0) return 0.0;
  const int n = y.n;
  const Matrix a = field.at(y);
  const double det_inv = std::abs(determinant(inverse(a)));
  return phi / std::pow(y.norm(), n) * std::pow(det_inv, 1.0 / q1) * log_growth_factor(op_norm(a));
}

double k_integrand(const ConstantSpec& spec, double r) {
  const double mass = spec.kernel.angular_abs_mass(r, spec.n);
  if (mass == 0.0) return 0.0;
  const ExponentBundle& e = spec.exponents;
  const MatrixFactors m = factors_at(spec.field, r);
  const double d = m.det_inv;
  const double nd = spec.n;
  const double lip = 1.0 + std::pow(m.norm, e.beta);
  double w = 0.0;
  switch (spec.which) {
    case 1:
      w = std::max(std::pow(d, 1.0 / e.q - e.lambda / e.q),
                   std::pow(d, e.beta / nd + 1.0 / e.q - e.lambda / e.q)) * lip;
      break;
    case 2:
      w = std::max(std::pow(d, 1.0 / e.q), std::pow(d, 1.0 / e.p)) * lip;
      break;
    case 3:
      w = std::max(std::pow(d, 1.0 / e.q2), std::pow(d, 1.0 / e.q1)) * lip *
          g_from_norms(m.norm, m.inv_norm, e.alpha, e.lambda);
      break;
    case 4:
      w = std::max(std::pow(d, 1.0 / e.q2), std::pow(d, 1.0 / e.q1)) * lip *
          g_from_norms(m.norm, m.inv_norm, e.alpha, 0.0);
      break;
    case 5:
      w = std::max(std::pow(d, -1.0 / e.p), std::pow(d, 1.0 + e.beta / nd - 1.0 / e.p)) * lip;
      break;
    case 6:
      w = std::pow(d, 1.0 / e.q1) * g_from_norms(m.norm, m.inv_norm, e.alpha1, e.lambda) *
          log_growth_factor(m.norm);
      break;
    case 7:
      w = std::pow(d, 1.0 / e.q1) * g_from_norms(m.norm, m.inv_norm, e.alpha1, 0.0) *
          log_growth_factor(m.norm);
      break;
    default:
      throw InvalidInput("constant index must be 1..7");
  }
  return mass * w / r;
}

ConstantResult k_constant(const ConstantSpec& spec, double tol) {
  if (spec.which < 1 || spec.which > 7) throw InvalidInput("constant index must be 1..7");
  static const TheoremId owner[] = {TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_3,
                                    TheoremId::T3_4, TheoremId::T3_5, TheoremId::T4_1,
                                    TheoremId::T4_2};
  const auto violated = check_hypotheses(owner[spec.which - 1], spec.exponents, spec.n);
  if (!violated.empty()) {
    throw ConstraintViolation("K" + std::to_string(spec.which) + " requires " + violated.front());
  }
  RadialOptions opts;
  opts.tol = tol;
  opts.breakpoints = spec.kernel.breakpoints;
  std::vector<double> bp = spec.kernel.breakpoints;
  if (spec.field.kind == FieldKind::Radial) bp.push_back(1.0);  // ||A|| = 1 branch switch
  opts.breakpoints = bp;
  auto g = [&spec](double r) { return k_integrand(spec, r); };
  const QuadratureResult q = integrate_radial(g, spec.kernel.r_lo, spec.kernel.r_hi, opts);
  ConstantResult out;
  out.value = q.value;
  out.error_estimate = q.error_estimate;
  out.divergence_suspect = !std::isfinite(q.value) || q.error_estimate > 0.1 * std::abs(q.value);
  return out;
}

}  // namespace hausdorff
