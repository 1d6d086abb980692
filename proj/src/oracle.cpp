#include "qsl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance to the target along exp(-iHt), reduced to the eigenbasis of H:
//   dist(t)^2 = C + sum_j |e^{-i E_j t} - D_jj|^2,
// with D = V^dag O V and C the (t-independent) off-diagonal mass of D.
// Center-quotienting scales D by an N-th root of unity, which leaves C
// unchanged, so one profile serves all phases.
struct DistProfile {
  Eigen::VectorXd energies;
  Eigen::VectorXcd diag;
  double offdiag_sq = 0.0;
  std::vector<Complex> center_phases;  // {1} or all N-th roots of unity

  DistProfile(const Matrix& h, const Matrix& o, bool quotient_center,
              double tol) {
    const SpectralDecomposition d = eig_hermitian(h, tol);
    const auto n = h.rows();
    energies = d.eigenvalues.real();
    const Matrix dd = d.eigenvectors.adjoint() * o * d.eigenvectors;
    diag = dd.diagonal();
    offdiag_sq = dd.squaredNorm() - diag.squaredNorm();
    if (quotient_center) {
      for (Eigen::Index k = 0; k < n; ++k)
        center_phases.push_back(std::polar(1.0, 2.0 * kPi * k / double(n)));
    } else {
      center_phases.push_back(Complex(1.0, 0.0));
    }
  }

  double operator()(double t) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& w : center_phases) {
      double s = offdiag_sq;
      for (Eigen::Index j = 0; j < energies.size(); ++j) {
        const Complex diff = std::polar(1.0, -energies(j) * t) - w * diag(j);
        s += std::norm(diff);
      }
      best = std::min(best, s);
    }
    return std::sqrt(best);
  }

  // Lipschitz constant of the distance in t.
  double speed() const { return energies.norm(); }
};

// Golden-section minimization on [a, b].
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

struct CandidateEval {
  std::optional<double> hit_time;
  double hit_dist = 0.0;
  double min_dist = std::numeric_limits<double>::infinity();
  double t_at_min = 0.0;
};

// Scan the distance over (0, t_max], refine promising local minima in time
// order for hits, and refine the global minimum for the achieved distance.
CandidateEval evaluate_profile(const DistProfile& prof, double t_max,
                               double dist_tol, int scan_samples) {
  CandidateEval ev;
  const int m = std::max(scan_samples, 8);
  const double dt = t_max / m;
  std::vector<double> g(m + 1);
  for (int i = 0; i <= m; ++i) g[i] = prof(i * dt);

  const double slack = dist_tol + prof.speed() * dt;
  int best_i = 1;
  for (int i = 1; i <= m; ++i) {
    if (g[i] < g[best_i]) best_i = i;
    const bool local_min =
        g[i] <= g[i - 1] && (i == m || g[i] <= g[i + 1]);
    if (!ev.hit_time && local_min && g[i] <= slack &&
        std::sqrt(std::max(prof.offdiag_sq, 0.0)) <= dist_tol) {
      const double lo = (i - 1) * dt;
      const double hi = std::min((i + 1) * dt, t_max);
      const auto [t_star, f_star] = golden_min(prof, lo, hi, 48);
      if (f_star <= dist_tol && t_star > 0.0) {
        ev.hit_time = t_star;
        ev.hit_dist = f_star;
      }
    }
  }
  {
    const double lo = (best_i - 1) * dt;
    const double hi = std::min((best_i + 1) * dt, t_max);
    const auto [t_star, f_star] = golden_min(prof, lo, hi, 48);
    ev.min_dist = f_star;
    ev.t_at_min = t_star;
  }
  return ev;
}

// ---- quasi-random directions -------------------------------------------

double radical_inverse(long index, int base) {
  double inv = 1.0 / base, result = 0.0, frac = inv;
  while (index > 0) {
    result += (index % base) * frac;
    index /= base;
    frac *= inv;
  }
  return result;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

// Halton point with a seeded Cranley-Patterson rotation, mapped to a unit
// vector in R^dim through Box-Muller pairs.
Eigen::VectorXd sphere_point(long index, int dim,
                             const std::vector<double>& shifts) {
  const int pairs = (dim + 1) / 2;
  Eigen::VectorXd z(2 * pairs);
  for (int p = 0; p < pairs; ++p) {
    double u1 = radical_inverse(index, kPrimes[2 * p]) + shifts[2 * p];
    double u2 = radical_inverse(index, kPrimes[2 * p + 1]) + shifts[2 * p + 1];
    u1 -= std::floor(u1);
    u2 -= std::floor(u2);
    u1 = std::max(u1, 1e-300);
    const double r = std::sqrt(-2.0 * std::log(u1));
    z(2 * p) = r * std::cos(2.0 * kPi * u2);
    z(2 * p + 1) = r * std::sin(2.0 * kPi * u2);
  }
  Eigen::VectorXd c = z.head(dim);
  const double norm = c.norm();
  if (norm == 0.0) {
    c.setZero();
    c(0) = 1.0;
    return c;
  }
  return c / norm;
}

}  // namespace

Matrix propagate(const Matrix& h, double t, double tol) {
  return expm_hermitian_generator(h, t, tol);
}

double gate_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm();
}

std::vector<Matrix> traceless_hermitian_basis(int n) {
  std::vector<Matrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix x = Matrix::Zero(n, n);
      x(j, k) = x(k, j) = inv_sqrt2;
      basis.push_back(x);
      Matrix y = Matrix::Zero(n, n);
      y(j, k) = Complex(0.0, -inv_sqrt2);
      y(k, j) = Complex(0.0, inv_sqrt2);
      basis.push_back(y);
    }
  for (int l = 1; l < n; ++l) {
    Matrix d = Matrix::Zero(n, n);
    const double scale = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int j = 0; j < l; ++j) d(j, j) = scale;
    d(l, l) = -double(l) * scale;
    basis.push_back(d);
  }
  return basis;
}

std::optional<double> first_hit_time(const Matrix& h, const Matrix& o,
                                     double t_max, double dist_tol,
                                     int scan_samples, bool quotient_center) {
  if (!(t_max > 0.0))
    throw std::invalid_argument("first_hit_time: t_max must be positive");
  if (!is_hermitian(h))
    throw std::invalid_argument("first_hit_time: H is not Hermitian");
  const DistProfile prof(h, o, quotient_center, kTolSpec);
  const CandidateEval ev =
      evaluate_profile(prof, t_max, dist_tol, scan_samples);
  if (ev.hit_time) return ev.hit_time;
  return std::nullopt;
}

SearchReport brute_force_min_time(const ControlProblem& p, const Matrix& o,
                                  const SearchConfig& cfg, double tol) {
  require_valid(p, tol);
  if (p.dim > cfg.max_dim)
    throw std::invalid_argument("brute_force_min_time: dimension guard exceeded");
  if (!is_special_unitary(o, tol))
    throw std::invalid_argument("brute_force_min_time: target is not special unitary");

  const auto branches = t_opt_over_branches(p, o, cfg.branch_max_shift, tol);
  double t_ref = 0.0;
  for (const QslResult& r : branches)
    if (r.t_opt > 0.0) { t_ref = r.t_opt; break; }
  if (t_ref <= 0.0)
    throw std::invalid_argument("brute_force_min_time: target has no positive reference time");
  const double t_max = cfg.t_max_factor * t_ref;

  const int d = p.dim * p.dim - 1;
  const long samples =
      cfg.samples > 0 ? cfg.samples : (p.dim == 2 ? 2000 : 20000);
  const std::vector<Matrix> basis = traceless_hermitian_basis(p.dim);
  const double radius = std::sqrt(p.budget);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shifts(2 * ((d + 1) / 2));
  for (double& s : shifts) s = unif(rng);

  const auto control_of = [&](const Eigen::VectorXd& c) {
    Matrix hc = Matrix::Zero(p.dim, p.dim);
    for (int k = 0; k < d; ++k) hc += c(k) * basis[k];
    return Matrix(radius * hc);
  };

  const int scan = 2048;
  long evaluated = 0;
  int line_searches = 0;

  struct Candidate {
    Eigen::VectorXd c;
    CandidateEval ev;
  };
  // Lexicographic: hits first, then hit time, then achieved distance.
  const auto better = [](const CandidateEval& a, const CandidateEval& b) {
    if (a.hit_time.has_value() != b.hit_time.has_value())
      return a.hit_time.has_value();
    if (a.hit_time) return *a.hit_time < *b.hit_time;
    return a.min_dist < b.min_dist;
  };

  const int iter_budget =
      cfg.refine_iters > 0 ? cfg.refine_iters : (p.dim == 2 ? 300 : 1200);
  const int keep = std::max(cfg.refine_restarts, 1);

  // One sampling + refinement pass over the sphere, with hits only counted
  // up to pass_t_max.
  const auto run_pass = [&](double pass_t_max) {
    const auto evaluate = [&](const Eigen::VectorXd& c) {
      ++evaluated;
      const DistProfile prof(Matrix(p.h0 + control_of(c)), o,
                             cfg.quotient_center, tol);
      return evaluate_profile(prof, pass_t_max, cfg.dist_tol, scan);
    };

    // Keep the best candidates, but angularly separated so the restarts do
    // not all fall into one watershed of the distance landscape.
    std::vector<Candidate> top;
    constexpr double kSeparation = 0.92;  // cos of the exclusion radius
    for (long s = 0; s < samples; ++s) {
      Candidate cand{sphere_point(s + 20, d, shifts), {}};
      cand.ev = evaluate(cand.c);
      const auto near = std::find_if(
          top.begin(), top.end(),
          [&](const Candidate& t) { return cand.c.dot(t.c) > kSeparation; });
      if (near != top.end()) {
        if (!better(cand.ev, near->ev)) continue;
        top.erase(near);
      }
      const auto pos = std::find_if(
          top.begin(), top.end(),
          [&](const Candidate& t) { return better(cand.ev, t.ev); });
      if (pos != top.end() || int(top.size()) < keep) {
        top.insert(pos, std::move(cand));
        if (int(top.size()) > keep) top.pop_back();
      }
    }

    // Scalar refinement objective; any hit scores below any miss since
    // hit times never exceed pass_t_max.
    const auto score = [&](const CandidateEval& ev) {
      return ev.hit_time ? *ev.hit_time : pass_t_max + ev.min_dist;
    };

    // Powell-style direction-set descent, projected onto the sphere. Plain
    // coordinate sweeps zig-zag and stall in the curved valleys of this
    // landscape; replacing the direction of largest decrease with the sweep
    // displacement tracks the valley floor. The line-search width only
    // shrinks once a whole sweep stops improving.
    Candidate best = top.front();
    for (const Candidate& start : top) {
      Eigen::VectorXd c = start.c;
      CandidateEval cur = start.ev;
      Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(d, d);
      double w = 0.9;
      int local_searches = 0;
      CandidateEval trial_ev;
      const auto line_search = [&](const Eigen::VectorXd& u) {
        const auto point = [&](double x) {
          return Eigen::VectorXd((c + x * u).normalized());
        };
        const auto f = [&](double x) {
          trial_ev = evaluate(point(x));
          return score(trial_ev);
        };
        const auto [x_star, f_star] = golden_min(f, -w, w, 24);
        ++line_searches;
        ++local_searches;
        double decrease = 0.0;
        if (f_star < score(cur) - 1e-12) {
          decrease = score(cur) - f_star;
          c = point(x_star);
          f(0.0);  // re-evaluate so cur matches the accepted point
          cur = trial_ev;
        }
        if (better(cur, best.ev)) best = {c, cur};
        return decrease;
      };
      while (local_searches < iter_budget) {
        const Eigen::VectorXd c0 = c;
        const double f0 = score(cur);
        int big_i = 0;
        double big_dec = 0.0;
        bool out_of_budget = false;
        for (int i = 0; i < d; ++i) {
          const double dec = line_search(dirs.col(i));
          if (dec > big_dec) {
            big_dec = dec;
            big_i = i;
          }
          if (local_searches >= iter_budget) {
            out_of_budget = true;
            break;
          }
        }
        if (out_of_budget) break;
        const Eigen::VectorXd disp = c - c0;
        if (disp.norm() > 1e-12) {
          const Eigen::VectorXd u = disp.normalized();
          line_search(u);
          dirs.col(big_i) = u;
        }
        if (f0 - score(cur) < 1e-12) {
          w *= 0.6;
          if (w < 1e-4) break;
        }
      }
    }
    return best;
  };

  // Iterative time capping: once a hit is found, rerun with t_max just
  // below it. The found solution's valley flattens out and the descent is
  // free to flow toward earlier solutions; stop when a capped pass finds
  // no hit at all.
  Candidate best = run_pass(t_max);
  for (int round = 0; best.ev.hit_time && round < 8; ++round) {
    const double cap = (1.0 - 1e-3) * *best.ev.hit_time;
    const Candidate capped = run_pass(cap);
    if (!capped.ev.hit_time) break;
    best = capped;
  }

  SearchReport report;
  report.samples_evaluated = evaluated;
  report.refinement_iters = line_searches;
  report.best_control = control_of(best.c);
  report.hit = best.ev.hit_time.has_value();
  if (report.hit) {
    report.best_time = *best.ev.hit_time;
    report.best_distance = best.ev.hit_dist;
  } else {
    report.best_time = best.ev.t_at_min;
    report.best_distance = best.ev.min_dist;
  }
  return report;
}

}  // namespace qsl
