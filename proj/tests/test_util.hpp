#pragma once

#include <numbers>
#include <random>

#include "qsl/hamiltonians.hpp"
#include "qsl/matcore.hpp"

namespace qsl::testing {

inline constexpr double kPi = std::numbers::pi;

// Random Hermitian with i.i.d. standard normal Hermitian-Gaussian entries.
inline Matrix random_hermitian(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return (m + m.adjoint()) / 2.0;
}

inline Matrix random_hermitian_traceless(int n, std::mt19937& rng) {
  Matrix m = random_hermitian(n, rng);
  m -= (m.trace() / double(n)) * Matrix::Identity(n, n);
  return m;
}

// Haar-ish special unitary via a random Hermitian exponential, made
// det-1 by subtracting the trace phase.
inline Matrix random_special_unitary(int n, std::mt19937& rng) {
  const Matrix a = random_hermitian_traceless(n, rng);
  return expm_hermitian_generator(a, 1.0);
}

// Valid problem: random traceless Hermitian drift plus a budget strictly
// above the drift strength.
inline ControlProblem random_problem(int n, std::mt19937& rng,
                                     double min_rho = 1.2,
                                     double max_rho = 8.0) {
  std::uniform_real_distribution<double> unif(min_rho, max_rho);
  const Matrix h0 = random_hermitian_traceless(n, rng);
  const double h = (h0 * h0).trace().real();
  return make_problem(h0, unif(rng) * h);
}

// Random control saturating the budget exactly.
inline Matrix random_saturating_control(const ControlProblem& p,
                                        std::mt19937& rng) {
  Matrix hc = random_hermitian_traceless(p.dim, rng);
  const double norm2 = (hc * hc).trace().real();
  return Matrix(std::sqrt(p.budget / norm2) * hc);
}

}  // namespace qsl::testing
