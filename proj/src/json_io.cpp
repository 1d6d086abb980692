#include "qsl/json_io.hpp"

#include <nlohmann/json.hpp>

namespace qsl {

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    entries.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw JsonError("matrix: expected {\"dim\", \"entries\"}");
  const auto n = j.at("dim").get<Eigen::Index>();
  if (n < 1) throw JsonError("matrix: dim must be >= 1");
  const json& entries = j.at("entries");
  if (!entries.is_array() || Eigen::Index(entries.size()) != n)
    throw JsonError("matrix: entries must be an NxN array");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = entries.at(i);
    if (!row.is_array() || Eigen::Index(row.size()) != n)
      throw JsonError("matrix: entries must be an NxN array");
    for (Eigen::Index jj = 0; jj < n; ++jj) {
      const json& cell = row.at(jj);
      if (!cell.is_array() || cell.size() != 2)
        throw JsonError("matrix: each entry must be [re, im]");
      m(i, jj) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json hamiltonian_to_json(const Matrix& m) { return matrix_to_json(m); }

Matrix hamiltonian_from_json(const json& j) {
  if (j.is_object() && j.contains("pauli_terms")) {
    std::vector<PauliString> terms;
    for (const json& t : j.at("pauli_terms"))
      terms.push_back({t.at("string").get<std::string>(),
                       t.at("coeff").get<double>()});
    try {
      return build_pauli(terms);
    } catch (const std::invalid_argument& e) {
      throw JsonError(std::string("hamiltonian: ") + e.what());
    }
  }
  return matrix_from_json(j);
}

double budget_from_json(const json& j) {
  const bool has_budget = j.contains("budget");
  const bool has_alpha = j.contains("alpha");
  if (has_budget == has_alpha)
    throw JsonError("exactly one of \"budget\" or \"alpha\" is required");
  if (has_budget) return j.at("budget").get<double>();
  const double alpha = j.at("alpha").get<double>();
  if (!(alpha > 0.0)) throw JsonError("alpha must be positive");
  return 1.0 / alpha;
}

ControlProblem problem_from_json(const json& j) {
  if (!j.is_object() || !j.contains("h0"))
    throw JsonError("problem: expected {\"h0\", \"budget\"|\"alpha\"}");
  return make_problem(hamiltonian_from_json(j.at("h0")), budget_from_json(j));
}

Matrix target_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return preset_gate(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw JsonError(e.what());
    }
  }
  return matrix_from_json(j);
}

ControlSchedule schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("segments"))
    throw JsonError("schedule: expected {\"segments\": [...]}");
  ControlSchedule s;
  s.relax_budget = j.value("relax_budget", false);
  for (const json& seg : j.at("segments"))
    s.segments.push_back({hamiltonian_from_json(seg.at("hc")),
                          seg.at("duration").get<double>()});
  return s;
}

SearchConfig search_config_from_json(const json& j) {
  SearchConfig cfg;
  if (j.is_null()) return cfg;
  cfg.samples = j.value("samples", cfg.samples);
  cfg.t_max_factor = j.value("t_max_factor", cfg.t_max_factor);
  cfg.refine_iters = j.value("refine_iters", cfg.refine_iters);
  cfg.refine_restarts = j.value("refine_restarts", cfg.refine_restarts);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.dist_tol = j.value("dist_tol", cfg.dist_tol);
  cfg.quotient_center = j.value("quotient_center", cfg.quotient_center);
  cfg.max_dim = j.value("max_dim", cfg.max_dim);
  cfg.branch_max_shift = j.value("branch_max_shift", cfg.branch_max_shift);
  return cfg;
}

json log_branch_to_json(const LogBranch& b) {
  return json{{"matrix", matrix_to_json(b.matrix)},
              {"branch_offsets", b.branch_offsets},
              {"phase_sum_check", b.phase_sum_check},
              {"near_branch_cut", b.near_branch_cut}};
}

json qsl_result_to_json(const QslResult& r) {
  return json{{"t_opt", r.t_opt},
              {"rho", r.rho},
              {"root_sign", r.root_sign},
              {"hc_opt", matrix_to_json(r.hc_opt)},
              {"hc_defined", r.hc_defined},
              {"branch", log_branch_to_json(r.branch_used)},
              {"diagnostics",
               {{"tr_h0_logo", {r.tr_h0_logo.real(), r.tr_h0_logo.imag()}},
                {"tr_logo_sq", r.tr_logo_sq},
                {"budget_residual", r.budget_residual}}}};
}

json search_report_to_json(const SearchReport& r) {
  return json{{"best_time", r.best_time},
              {"best_control", matrix_to_json(r.best_control)},
              {"best_distance", r.best_distance},
              {"samples_evaluated", r.samples_evaluated},
              {"refinement_iters", r.refinement_iters},
              {"hit", r.hit}};
}

}  // namespace qsl
