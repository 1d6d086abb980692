#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

// Dense complex matrix kernel: Hermitian/unitary predicates, spectral
// decomposition, matrix exponential, and branch-corrected traceless
// logarithms of special-unitary matrices.
//
// All functions are pure and safe for concurrent use.

namespace qsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // square, dense; the universal operator carrier
using RealVector = Eigen::VectorXd;

// Absolute Frobenius tolerance for structural predicates (Hermitian,
// unitary, det == 1, reconstruction residuals).
inline constexpr double kTolSpec = 1e-9;

// Eigenphase distance to the branch cut at pi below which a logarithm is
// flagged as ambiguous.
inline constexpr double kTolBranch = 1e-6;

// Eigenvalues and an orthonormal eigenbasis of a normal matrix.
// Satisfies V diag(lambda) V^dag == input and V^dag V == I to kTolSpec.
struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;
  Matrix eigenvectors;  // columns
};

// A traceless anti-Hermitian logarithm of a special-unitary matrix.
struct LogBranch {
  Matrix matrix;                    // exp(matrix) == source unitary
  std::vector<int> branch_offsets;  // eigenphase shifts in units of 2*pi
  double phase_sum_check = 0.0;     // sum of corrected eigenphases, ~0
  bool near_branch_cut = false;     // some eigenphase within kTolBranch of pi
};

bool is_hermitian(const Matrix& m, double tol = kTolSpec);
bool is_unitary(const Matrix& m, double tol = kTolSpec);
bool is_special_unitary(const Matrix& m, double tol = kTolSpec);

// Tr(A^dag B).
Complex hilbert_schmidt(const Matrix& a, const Matrix& b);

// Standard selfadjoint eigensolver; eigenvalues ascending, real.
SpectralDecomposition eig_hermitian(const Matrix& h, double tol = kTolSpec);

// Joint diagonalization of a unitary U via its Hermitian and anti-Hermitian
// parts: (U+U^dag)/2 is diagonalized first, then each degenerate eigenspace
// is rotated to also diagonalize (U-U^dag)/(2i). Works because both parts
// commute for normal U. Eigenvalues returned with unit modulus.
SpectralDecomposition eig_unitary(const Matrix& u, double tol = kTolSpec);

// exp(-i t H) for Hermitian H, via spectral decomposition.
Matrix expm_hermitian_generator(const Matrix& h, double t, double tol = kTolSpec);

// exp(A) for anti-Hermitian A (iA is Hermitian).
Matrix expm_antihermitian(const Matrix& a, double tol = kTolSpec);

// Principal logarithm of a special-unitary O, corrected to be traceless.
// Eigenphases start in (-pi, pi]; since their sum is 2*pi*m for integer m,
// the m phases closest to the branch cut (largest if m > 0, smallest if
// m < 0, ties by ascending eigenvalue index) are shifted by -/+ 2*pi.
LogBranch logm_special_unitary(const Matrix& o, double tol = kTolSpec,
                               double tol_branch = kTolBranch);

// All traceless logarithms obtainable by shifting each eigenphase by
// 2*pi*k_n with |k_n| <= max_shift and zero corrected phase sum,
// deduplicated. Always contains the principal traceless branch.
std::vector<LogBranch> enumerate_log_branches(const Matrix& o, int max_shift,
                                              double tol = kTolSpec,
                                              double tol_branch = kTolBranch);

}  // namespace qsl
