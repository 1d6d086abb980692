#include "qsl/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

double param(const std::map<std::string, double>& params, const std::string& k) {
  const auto it = params.find(k);
  if (it == params.end())
    throw std::invalid_argument("preset: missing parameter '" + k + "'");
  return it->second;
}

// Shared trace data for both time routes.
struct BranchTraces {
  double beta;  // i Tr(H0 L), real
  double l2;    // -Tr(L^2) = ||L||_HS^2 > 0
  double slack; // budget - Tr(H0^2) > 0
};

BranchTraces branch_traces(const ControlProblem& p, const LogBranch& l) {
  const Complex cross = (p.h0 * l.matrix).trace();
  BranchTraces t;
  t.beta = (Complex(0.0, 1.0) * cross).real();
  t.l2 = -(l.matrix * l.matrix).trace().real();
  t.slack = p.budget - (p.h0 * p.h0).trace().real();
  return t;
}

}  // namespace

TargetGate make_target(const Matrix& o, double tol) {
  TargetGate g;
  g.o = o;
  g.branch = logm_special_unitary(o, tol);
  return g;
}

QslResult t_opt_closed_form(const ControlProblem& p, const TargetGate& g,
                            double tol) {
  require_valid(p, tol);
  if (!is_special_unitary(g.o, tol))
    throw std::invalid_argument("t_opt_closed_form: target is not special unitary");

  QslResult r;
  r.rho = rho(p);
  r.branch_used = g.branch;
  const Matrix& l = g.branch.matrix;
  r.tr_h0_logo = (p.h0 * l).trace();
  r.tr_logo_sq = (l * l).trace().real();

  if (l.norm() <= tol) {  // identity target: zero-length curve
    r.t_opt = 0.0;
    r.hc_defined = false;
    r.hc_opt = Matrix::Zero(p.dim, p.dim);
    r.budget_residual = 0.0;
    return r;
  }

  const BranchTraces t = branch_traces(p, g.branch);
  const double disc = std::sqrt(t.beta * t.beta + t.l2 * t.slack);
  // Two-root closed form T = (-beta +- disc)/slack; the positive choice is
  // always +disc. Evaluated in the cancellation-free arrangement.
  r.root_sign = t.beta > 0.0 ? -1 : +1;
  r.t_opt = t.beta > 0.0 ? t.l2 / (t.beta + disc) : (-t.beta + disc) / t.slack;
  if (!(r.t_opt > 0.0))
    throw std::logic_error("t_opt_closed_form: no positive root");

  r.hc_opt = (Complex(0.0, 1.0) / r.t_opt) * l - p.h0;
  r.hc_opt = ((r.hc_opt + r.hc_opt.adjoint()) / 2.0).eval();
  r.budget_residual = (r.hc_opt * r.hc_opt).trace().real() - p.budget;
  return r;
}

double budget_quadratic_root(const ControlProblem& p, const LogBranch& l,
                             double tol) {
  require_valid(p, tol);
  if (l.matrix.norm() <= tol)
    throw std::invalid_argument("budget_quadratic_root: zero logarithm");
  // (-Tr L^2) u^2 - 2i Tr(L H0) u + (Tr H0^2 - budget) = 0, u = 1/T.
  const double a = -(l.matrix * l.matrix).trace().real();
  const double b =
      (Complex(0.0, -2.0) * (l.matrix * p.h0).trace()).real();
  const double c = (p.h0 * p.h0).trace().real() - p.budget;
  const double disc = b * b - 4.0 * a * c;
  // a > 0 and c < 0, so the discriminant is positive and exactly one root
  // is positive.
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double u1 = q / a;
  const double u2 = c / q;
  const double u = std::max(u1, u2);
  if (!(u > 0.0))
    throw std::logic_error("budget_quadratic_root: no positive root");
  return 1.0 / u;
}

std::vector<QslResult> t_opt_over_branches(const ControlProblem& p,
                                           const Matrix& o, int max_shift,
                                           double tol) {
  std::vector<QslResult> out;
  for (const LogBranch& b : enumerate_log_branches(o, max_shift, tol)) {
    TargetGate g;
    g.o = o;
    g.branch = b;
    out.push_back(t_opt_closed_form(p, g, tol));
  }
  std::sort(out.begin(), out.end(),
            [](const QslResult& x, const QslResult& y) {
              return x.t_opt < y.t_opt;
            });
  return out;
}

Matrix preset_gate(const std::string& name) {
  if (name == "single-spin") {
    return (Matrix(2, 2) << 0, -1, 1, 0).finished();
  }
  if (name == "swap-chain") {
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    return std::polar(1.0, kPi / 4.0) * swap;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::pair<ControlProblem, TargetGate> preset(
    const std::string& name, const std::map<std::string, double>& params) {
  if (name == "single-spin") {
    const double bx = param(params, "B_x");
    const double by = param(params, "B_y");
    const double d2 = param(params, "D") * param(params, "D");
    if (!(bx * bx + by * by < d2))
      throw std::invalid_argument("single-spin preset requires B^2 < D^2");
    ControlProblem p = make_problem(
        build_pauli({{"X", bx}, {"Y", by}}), 2.0 * d2);
    return {p, make_target(preset_gate(name))};
  }
  if (name == "swap-chain") {
    const double lx = param(params, "lambda_x");
    const double ly = param(params, "lambda_y");
    const double lz = param(params, "lambda_z");
    const double alpha = param(params, "alpha");
    if (!(alpha > 0.0))
      throw std::invalid_argument("swap-chain preset requires alpha > 0");
    const double lam2 = lx * lx + ly * ly + lz * lz;
    if (!(4.0 * alpha * lam2 < 1.0))
      throw std::invalid_argument(
          "swap-chain preset requires 4 alpha lambda^2 < 1");
    ControlProblem p = make_problem(
        build_pauli({{"XX", lx}, {"YY", ly}, {"ZZ", lz}}), 1.0 / alpha);
    return {p, make_target(preset_gate(name))};
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace qsl
