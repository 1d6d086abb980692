#include "qsl/randers.hpp"

#include <cmath>

namespace qsl {

namespace {

void require_tangent(const Matrix& a, const ControlProblem& p, double tol,
                     const char* who) {
  if (a.rows() != p.dim || a.cols() != p.dim)
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  if (!is_hermitian(a, tol))
    throw std::invalid_argument(std::string(who) +
                                ": generator is not Hermitian");
}

}  // namespace

double randers_norm_general(const ControlProblem& p, const Matrix& a,
                            double tol) {
  require_valid(p, tol);
  require_tangent(a, p, tol, "randers_norm_general");
  const double alpha = 1.0 / p.budget;
  // g on generators; X = -iA, W = -iH0, so the i's cancel in every pairing.
  const double gxw = alpha * (a * p.h0).trace().real();
  const double gww = alpha * (p.h0 * p.h0).trace().real();
  const double gxx = alpha * (a * a).trace().real();
  const double one_minus = 1.0 - gww;  // > 0 by small wind
  const double rad = gxw * gxw + one_minus * gxx;
  const double f = (-gxw + std::sqrt(std::max(rad, 0.0))) / one_minus;
  return std::max(f, 0.0);
}

double randers_norm_su(const ControlProblem& p, const Matrix& a, double tol) {
  require_valid(p, tol);
  require_tangent(a, p, tol, "randers_norm_su");
  const double h = drift_strength(p);
  const double cross = (a * p.h0).trace().real();
  if (std::abs(cross) <= tol)
    throw std::domain_error(
        "randers_norm_su: Tr(A H0) = 0; use randers_norm_general");
  const double r = rho(p);
  const double rad =
      1.0 + (r - 1.0) * h * (a * a).trace().real() / (cross * cross);
  const double pre = cross / ((r - 1.0) * h);
  const double root = std::sqrt(rad);
  // rad > 1, so exactly one sign gives a nonnegative value.
  const double plus = pre * (1.0 + root);
  const double minus = pre * (1.0 - root);
  return plus >= 0.0 ? plus : minus;
}

double curve_length(const ControlProblem& p, const ControlSchedule& schedule,
                    double tol) {
  require_valid(p, tol);
  double total = 0.0;
  for (const auto& seg : schedule.segments) {
    if (!(seg.duration > 0.0))
      throw std::invalid_argument("curve_length: nonpositive segment duration");
    if (!is_hermitian(seg.hc, tol))
      throw std::invalid_argument("curve_length: segment Hc is not Hermitian");
    if (std::abs(seg.hc.trace()) > tol)
      throw std::invalid_argument("curve_length: segment Hc is not traceless");
    if (!schedule.relax_budget) {
      const double hc2 = (seg.hc * seg.hc).trace().real();
      if (std::abs(hc2 - p.budget) > kTolBudget * p.budget)
        throw std::invalid_argument("curve_length: segment violates the budget");
    }
    // The generator is constant in t on the segment, but the integrand is
    // still evaluated pointwise by composite Simpson with panel doubling so
    // the same code path serves relaxed schedules and future time-dependent
    // segments.
    const Matrix total_h = p.h0 + seg.hc;
    const auto integrand = [&](double) {
      return randers_norm_general(p, total_h, tol);
    };
    const double len = seg.duration;
    double prev = 0.0;
    for (int panels = 256; panels <= (1 << 14); panels *= 2) {
      const double dt = len / panels;
      double s = integrand(0.0) + integrand(len);
      for (int i = 1; i < panels; ++i)
        s += (i % 2 ? 4.0 : 2.0) * integrand(i * dt);
      const double est = s * dt / 3.0;
      if (panels > 256 &&
          std::abs(est - prev) < 1e-8 * std::max(1.0, std::abs(est))) {
        prev = est;
        break;
      }
      prev = est;
    }
    total += prev;
  }
  return total;
}

}  // namespace qsl
