#include "qsl/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

void require_square(const Matrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
}

// Wrap a phase into (-pi, pi].
double principal_phase(double theta) {
  theta = std::remainder(theta, 2.0 * kPi);
  if (theta <= -kPi) theta += 2.0 * kPi;
  return theta;
}

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

bool is_special_unitary(const Matrix& m, double tol) {
  if (!is_unitary(m, tol)) return false;
  return std::abs(m.determinant() - Complex(1.0, 0.0)) <= 10.0 * tol;
}

Complex hilbert_schmidt(const Matrix& a, const Matrix& b) {
  require_square(a, "hilbert_schmidt");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hilbert_schmidt: dimension mismatch");
  return (a.adjoint() * b).trace();
}

SpectralDecomposition eig_hermitian(const Matrix& h, double tol) {
  require_square(h, "eig_hermitian");
  if (!is_hermitian(h, tol))
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  SpectralDecomposition d;
  d.eigenvalues = es.eigenvalues().cast<Complex>();
  d.eigenvectors = es.eigenvectors();
  return d;
}

SpectralDecomposition eig_unitary(const Matrix& u, double tol) {
  require_square(u, "eig_unitary");
  if (!is_unitary(u, tol))
    throw std::invalid_argument("eig_unitary: input is not unitary");
  const auto n = u.rows();
  const Matrix re = (u + u.adjoint()) / 2.0;                // cos part
  const Matrix im = (u - u.adjoint()) / Complex(0.0, 2.0);  // sin part

  Eigen::SelfAdjointEigenSolver<Matrix> es(re);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_unitary: eigensolver failed");
  Matrix v = es.eigenvectors();
  const RealVector a = es.eigenvalues();

  // Rotate each eigenspace of the cos part so the sin part is diagonal too.
  const double group_tol = 1e-7;
  for (Eigen::Index lo = 0; lo < n;) {
    Eigen::Index hi = lo + 1;
    while (hi < n && a(hi) - a(lo) <= group_tol) ++hi;
    if (hi - lo > 1) {
      const Matrix block = v.middleCols(lo, hi - lo);
      Eigen::SelfAdjointEigenSolver<Matrix> sub(
          Matrix(block.adjoint() * im * block));
      v.middleCols(lo, hi - lo) = block * sub.eigenvectors();
    }
    lo = hi;
  }

  SpectralDecomposition d;
  d.eigenvectors = v;
  d.eigenvalues.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lam = v.col(k).dot(u * v.col(k));  // Rayleigh quotient
    d.eigenvalues(k) = lam / std::abs(lam);
  }
  return d;
}

Matrix expm_hermitian_generator(const Matrix& h, double t, double tol) {
  const SpectralDecomposition d = eig_hermitian(h, tol);
  const auto n = h.rows();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::polar(1.0, -t * d.eigenvalues(k).real());
  return d.eigenvectors * phases.asDiagonal() * d.eigenvectors.adjoint();
}

Matrix expm_antihermitian(const Matrix& a, double tol) {
  return expm_hermitian_generator(Matrix(Complex(0.0, 1.0) * a), 1.0, tol);
}

namespace {

LogBranch assemble_branch(const SpectralDecomposition& d,
                          const std::vector<double>& base_phases,
                          const std::vector<int>& offsets, double tol_branch) {
  const auto n = d.eigenvectors.rows();
  LogBranch b;
  b.branch_offsets = offsets;
  Eigen::VectorXcd diag(n);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double theta = base_phases[k] + 2.0 * kPi * offsets[k];
    sum += theta;
    diag(k) = Complex(0.0, theta);
    if (std::abs(std::abs(base_phases[k]) - kPi) <= tol_branch)
      b.near_branch_cut = true;
  }
  b.phase_sum_check = sum;
  Matrix l = d.eigenvectors * diag.asDiagonal() * d.eigenvectors.adjoint();
  b.matrix = (l - l.adjoint()) / 2.0;  // clean to exactly anti-Hermitian
  return b;
}

}  // namespace

LogBranch logm_special_unitary(const Matrix& o, double tol, double tol_branch) {
  if (!is_unitary(o, tol))
    throw std::invalid_argument("logm_special_unitary: input is not unitary");
  if (std::abs(o.determinant() - Complex(1.0, 0.0)) > 10.0 * tol)
    throw std::invalid_argument("logm_special_unitary: determinant is not 1");
  const SpectralDecomposition d = eig_unitary(o, tol);
  const auto n = o.rows();

  std::vector<double> phases(n);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    phases[k] = principal_phase(std::arg(d.eigenvalues(k)));
    sum += phases[k];
  }
  const int m = static_cast<int>(std::lround(sum / (2.0 * kPi)));

  // Shift |m| phases by -/+ 2*pi, picking those closest to the branch cut.
  std::vector<int> offsets(n, 0);
  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) idx[k] = k;
  if (m > 0) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return phases[i] > phases[j]; });
    for (int k = 0; k < m; ++k) offsets[idx[k]] = -1;
  } else if (m < 0) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return phases[i] < phases[j]; });
    for (int k = 0; k < -m; ++k) offsets[idx[k]] = +1;
  }
  return assemble_branch(d, phases, offsets, tol_branch);
}

std::vector<LogBranch> enumerate_log_branches(const Matrix& o, int max_shift,
                                              double tol, double tol_branch) {
  if (max_shift < 0)
    throw std::invalid_argument("enumerate_log_branches: max_shift must be >= 0");
  const LogBranch principal = logm_special_unitary(o, tol, tol_branch);
  const SpectralDecomposition d = eig_unitary(o, tol);
  const auto n = o.rows();

  std::vector<double> phases(n);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    phases[k] = principal_phase(std::arg(d.eigenvalues(k)));
    sum += phases[k];
  }
  const int m = static_cast<int>(std::lround(sum / (2.0 * kPi)));

  std::vector<LogBranch> out;
  out.push_back(principal);

  std::vector<int> k(n, -max_shift);
  for (;;) {
    int total = 0;
    for (int v : k) total += v;
    if (total == -m) {
      LogBranch cand = assemble_branch(d, phases, k, tol_branch);
      bool dup = false;
      for (const LogBranch& b : out)
        if ((b.matrix - cand.matrix).norm() <= 1e-8) { dup = true; break; }
      if (!dup) out.push_back(std::move(cand));
    }
    // next tuple in {-max_shift..max_shift}^n
    Eigen::Index pos = 0;
    while (pos < n && k[pos] == max_shift) k[pos++] = -max_shift;
    if (pos == n) break;
    ++k[pos];
  }
  return out;
}

}  // namespace qsl
