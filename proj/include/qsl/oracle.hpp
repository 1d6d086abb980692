#pragma once

#include <optional>

#include "qsl/qsl.hpp"

// Independent verification: Schroedinger propagation of constant-control
// candidates and derivative-free search over the budget sphere, confirming
// that no constant control beats the closed-form time and that the time is
// attained.

namespace qsl {

struct SearchConfig {
  long samples = 0;          // 0: auto (2000 for N=2, 20000 otherwise)
  double t_max_factor = 3.0; // t_max = factor * min over branches of t_opt
  int refine_iters = 0;      // line searches per restart; 0: auto by dim
  int refine_restarts = 8;   // top candidates kept for local refinement
  unsigned seed = 0;
  double dist_tol = 1e-6;    // Frobenius gate-match tolerance
  bool quotient_center = false;  // match O up to an N-th root of unity phase
  int max_dim = 4;           // dimension guard
  int branch_max_shift = 1;  // branches considered for the t_max reference
};

struct SearchReport {
  double best_time = 0.0;
  Matrix best_control;
  double best_distance = 0.0;  // achieved Frobenius distance to the target
  long samples_evaluated = 0;
  int refinement_iters = 0;
  bool hit = false;            // best_distance <= dist_tol
};

// exp(-i H t) for Hermitian H.
Matrix propagate(const Matrix& h, double t, double tol = kTolSpec);

// Frobenius norm of the difference.
double gate_distance(const Matrix& a, const Matrix& b);

// Smallest t in (0, t_max] with ||exp(-iHt) - O||_F <= dist_tol: coarse scan
// (scan_samples points), then golden-section refinement of the first local
// minimum that dips below dist_tol. Nullopt if no hit.
std::optional<double> first_hit_time(const Matrix& h, const Matrix& o,
                                     double t_max, double dist_tol = 1e-6,
                                     int scan_samples = 4096,
                                     bool quotient_center = false);

// Samples quasi-random directions on the budget sphere (exact sphere
// parametrization over an orthonormal traceless Hermitian basis), scans
// each constant control for gate hits, then refines the best candidates by
// projected coordinate descent with golden-section line searches.
// Deterministic for a fixed seed; candidates are combined in index order.
SearchReport brute_force_min_time(const ControlProblem& p, const Matrix& o,
                                  const SearchConfig& cfg = {},
                                  double tol = kTolSpec);

// Orthonormal (Hilbert-Schmidt) basis of traceless Hermitian N x N
// matrices, size N^2 - 1. Exposed for tests.
std::vector<Matrix> traceless_hermitian_basis(int n);

}  // namespace qsl
