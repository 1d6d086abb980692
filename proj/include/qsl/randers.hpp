#pragma once

#include <vector>

#include "qsl/hamiltonians.hpp"

// The Randers navigation norm on SU(N) and curve lengths of
// piecewise-constant control trajectories.
//
// Sign convention: a trajectory of the time evolution operator obeys
// dU/dt = -i H U, so the tangent at U generated by a Hermitian A is -iAU.
// The norm is right-invariant and therefore a function of A alone.
//
// randers_norm_general is the ground truth (it is regular everywhere on the
// small-wind domain); randers_norm_su is the specialized two-root form,
// which is written for tangents +iAU and is singular at Tr(A H0) = 0.
// The two agree under the mapping A <-> -A.

namespace qsl {

// Piecewise-constant control trajectory. Each segment's Hc must be
// Hermitian, traceless and budget-saturating unless relax_budget is set.
struct ControlSchedule {
  struct Segment {
    Matrix hc;
    double duration = 0.0;  // > 0
  };
  std::vector<Segment> segments;
  bool relax_budget = false;
};

// Norm of the tangent -iAU for Hermitian traceless A, evaluated from the
// general navigation formula with g(X, Y) = alpha Re Tr(X^dag Y) on
// generators and wind generator -i H0.
double randers_norm_general(const ControlProblem& p, const Matrix& a,
                            double tol = kTolSpec);

// Norm of the tangent +iAU from the specialized SU(N) form; of the two sign
// choices exactly one is >= 0 and is returned. Throws std::domain_error at
// Tr(A H0) = 0 (use randers_norm_general there).
double randers_norm_su(const ControlProblem& p, const Matrix& a,
                       double tol = kTolSpec);

// Integrated norm of dU/dt along the trajectory generated by
// H(t) = H0 + Hc(t). Budget-saturating schedules travel at unit speed, so
// the length equals the elapsed time; the integrand is nonetheless
// evaluated by adaptive composite Simpson quadrature so off-budget
// schedules (relax_budget) are also served.
double curve_length(const ControlProblem& p, const ControlSchedule& schedule,
                    double tol = kTolSpec);

}  // namespace qsl
