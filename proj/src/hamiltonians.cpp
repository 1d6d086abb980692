#include "qsl/hamiltonians.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsl {

const Matrix& pauli(char letter) {
  static const Matrix id = Matrix::Identity(2, 2);
  static const Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  static const Matrix y =
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Matrix z = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  switch (letter) {
    case 'I': return id;
    case 'X': return x;
    case 'Y': return y;
    case 'Z': return z;
    default:
      throw std::invalid_argument(std::string("pauli: unknown letter '") +
                                  letter + "'");
  }
}

Matrix build_pauli(const std::vector<PauliString>& strings) {
  if (strings.empty())
    throw std::invalid_argument("build_pauli: empty term list");
  const std::size_t q = strings.front().letters.size();
  if (q == 0) throw std::invalid_argument("build_pauli: empty Pauli string");
  const Eigen::Index dim = Eigen::Index(1) << q;
  Matrix sum = Matrix::Zero(dim, dim);
  for (const PauliString& term : strings) {
    if (term.letters.size() != q)
      throw std::invalid_argument("build_pauli: mixed string lengths");
    Matrix prod = pauli(term.letters[0]);
    for (std::size_t k = 1; k < q; ++k)
      prod = Eigen::kroneckerProduct(prod, pauli(term.letters[k])).eval();
    sum += term.coeff * prod;
  }
  return sum;
}

double drift_strength(const ControlProblem& p) {
  return hilbert_schmidt(p.h0, p.h0).real();
}

double rho(const ControlProblem& p) {
  const double h = drift_strength(p);
  if (h <= 0.0)
    throw std::domain_error(
        "rho: drift-free problem (Tr(H0^2) = 0) is out of scope");
  return p.budget / h;
}

std::pair<double, double> uniform_superposition_check(const Matrix& h,
                                                      double tol) {
  const SpectralDecomposition d = eig_hermitian(h, tol);
  const auto n = h.rows();
  const double lhs = (h * h).trace().real();
  const Eigen::VectorXcd psi =
      d.eigenvectors * Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n)));
  const double rhs = double(n) * psi.dot(h * (h * psi)).real();
  return {lhs, rhs};
}

std::vector<Violation> validate(const ControlProblem& p, double tol) {
  std::vector<Violation> out;
  if (p.dim < 1 || p.h0.rows() != p.dim || p.h0.cols() != p.dim) {
    out.push_back({"bad_dimension", double(p.h0.rows())});
    return out;
  }
  if (!is_hermitian(p.h0, tol))
    out.push_back({"not_hermitian", (p.h0 - p.h0.adjoint()).norm()});
  if (std::abs(p.h0.trace()) > tol)
    out.push_back({"not_traceless", std::abs(p.h0.trace())});
  if (!(p.budget > 0.0))
    out.push_back({"nonpositive_budget", p.budget});
  else if (is_hermitian(p.h0, tol)) {
    const double h = hilbert_schmidt(p.h0, p.h0).real();
    if (!(h < p.budget))
      out.push_back({"small_wind_violated", h / p.budget});
  }
  return out;
}

ControlProblem make_problem(Matrix h0, double budget, double tol) {
  if (h0.rows() != h0.cols() || h0.rows() < 1)
    throw std::invalid_argument("make_problem: h0 must be square");
  const Complex tr = h0.trace();
  if (std::abs(tr) > 0.0 && std::abs(tr) <= tol)
    h0 -= (tr / double(h0.rows())) * Matrix::Identity(h0.rows(), h0.cols());
  ControlProblem p;
  p.dim = int(h0.rows());
  p.h0 = std::move(h0);
  p.budget = budget;
  return p;
}

void require_valid(const ControlProblem& p, double tol) {
  const auto violations = validate(p, tol);
  if (violations.empty()) return;
  std::string msg = "invalid control problem:";
  for (const Violation& v : violations) msg += " " + v.name;
  throw std::invalid_argument(msg);
}

}  // namespace qsl
