#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsl/matcore.hpp"

// Drift and control Hamiltonians: Pauli-string builders, the navigation
// constraints on the drift/control pair, and related trace identities.

namespace qsl {

// One term of a sum of Pauli tensor products, e.g. {"XY", 0.5}.
struct PauliString {
  std::string letters;  // over {I, X, Y, Z}; length = qubit count
  double coeff = 0.0;
};

// Drift Hamiltonian plus the control budget Tr(Hc^2) = 1/alpha.
// Admissible controls form the Hilbert-Schmidt sphere of radius sqrt(budget)
// in the traceless Hermitian matrices.
struct ControlProblem {
  int dim = 0;
  Matrix h0;        // Hermitian, traceless
  double budget = 0.0;
};

struct Violation {
  std::string name;
  double measured = 0.0;
};

// Relative tolerance on the control-budget equality constraint.
inline constexpr double kTolBudget = 1e-9;

const Matrix& pauli(char letter);  // I, X, Y or Z, 2x2

// Sum of coeff * (tensor product of Pauli matrices). All strings must share
// one length q; the output has dimension 2^q.
Matrix build_pauli(const std::vector<PauliString>& strings);

// Tr(H0^2), real part (exactly real for Hermitian input).
double drift_strength(const ControlProblem& p);

// budget / Tr(H0^2); strictly > 1 for a valid problem.
double rho(const ControlProblem& p);

// Returns (Tr(H^2), N * <psi_un| H^2 |psi_un>) where |psi_un> is the uniform
// superposition of the eigenvectors of H. The two agree for Hermitian H;
// both are computed through different arithmetic so tests can assert the
// identity rather than a tautology.
std::pair<double, double> uniform_superposition_check(const Matrix& h,
                                                      double tol = kTolSpec);

// Empty iff all ControlProblem invariants hold: h0 Hermitian and traceless,
// budget positive, and Tr(H0^2) < budget strictly (small wind).
std::vector<Violation> validate(const ControlProblem& p, double tol = kTolSpec);

// Convenience constructor. Inputs whose trace is nonzero but below tol are
// projected onto the traceless part.
ControlProblem make_problem(Matrix h0, double budget, double tol = kTolSpec);

// Throws std::invalid_argument listing the violations, if any.
void require_valid(const ControlProblem& p, double tol = kTolSpec);

}  // namespace qsl
