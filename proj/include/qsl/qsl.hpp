#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsl/hamiltonians.hpp"
#include "qsl/matcore.hpp"

// Closed-form optimal times for constant controls.
//
// A constant total Hamiltonian A reaching the gate O at time T satisfies
// exp(-iTA) = O, i.e. A = (i/T) L for a traceless logarithm L of O. Imposing
// the budget Tr((A - H0)^2) = budget fixes T as the unique positive root of
//
//   (-Tr L^2) u^2 - 2i Tr(L H0) u + (Tr H0^2 - budget) = 0,   u = 1/T,
//
// which coincides with the Randers length of the curve. The closed form
// evaluated here is
//
//   T = [ -beta + sqrt(beta^2 + l s) ] / s,
//
// with beta = i Tr(H0 L) (real: Tr(H0 L) is purely imaginary),
// l = -Tr(L^2) > 0 and s = budget - Tr(H0^2) > 0. This is the two-root
// navigation expression with the sign resolved by positivity, under the
// tangent convention dU/dt = -iHU (the specialized two-root form flips the
// sign of the cross trace; see randers.hpp).

namespace qsl {

// A special-unitary gate together with a chosen logarithm branch.
struct TargetGate {
  Matrix o;
  LogBranch branch;
};

struct QslResult {
  double t_opt = 0.0;
  double rho = 0.0;
  int root_sign = +1;     // sign choice in the two-root closed form
  Matrix hc_opt;          // reconstructed constant control, (i/T) L - H0
  bool hc_defined = true; // false for the identity target (T = 0)
  LogBranch branch_used;
  // diagnostics
  Complex tr_h0_logo;     // Tr(H0 log O), purely imaginary
  double tr_logo_sq = 0.0;  // Tr((log O)^2), real and <= 0
  double budget_residual = 0.0;  // Tr(hc_opt^2) - budget
};

// Gate plus its principal traceless logarithm.
TargetGate make_target(const Matrix& o, double tol = kTolSpec);

// Optimal constant-control time for the given branch; also reconstructs the
// optimal control and its diagnostics. The identity target returns t_opt = 0
// with hc_defined = false.
QslResult t_opt_closed_form(const ControlProblem& p, const TargetGate& g,
                            double tol = kTolSpec);

// Independent route: T from the unique positive root of the budget
// quadratic, solved by the standard quadratic formula. Agrees with
// t_opt_closed_form to full precision; kept separate as an oracle.
double budget_quadratic_root(const ControlProblem& p, const LogBranch& l,
                             double tol = kTolSpec);

// Closed form per enumerated branch, sorted ascending by t_opt.
std::vector<QslResult> t_opt_over_branches(const ControlProblem& p,
                                           const Matrix& o, int max_shift,
                                           double tol = kTolSpec);

// Built-in setups:
//   "single-spin": params B_x, B_y, D. Drift B_x X + B_y Y, budget 2 D^2,
//                  target [[0,-1],[1,0]]. Requires B^2 < D^2.
//   "swap-chain":  params lambda_x, lambda_y, lambda_z, alpha. Heisenberg
//                  drift sum lambda_k (sigma^k x sigma^k), budget 1/alpha,
//                  target e^{i pi/4} SWAP. Requires 4 alpha lambda^2 < 1.
std::pair<ControlProblem, TargetGate> preset(
    const std::string& name, const std::map<std::string, double>& params);

// The gate matrix a preset uses (no problem data needed).
Matrix preset_gate(const std::string& name);

}  // namespace qsl
