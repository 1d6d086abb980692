#pragma once

#include <nlohmann/json_fwd.hpp>

#include "qsl/oracle.hpp"
#include "qsl/randers.hpp"

// JSON schemas shared by the CLI and by files on disk. See docs/formats.md.

namespace qsl {

using json = nlohmann::json;

// {"dim": N, "entries": [[[re, im], ...], ...]} row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// Either {"pauli_terms": [{"string": "XX", "coeff": 1.0}, ...]} or the
// dense matrix form.
json hamiltonian_to_json(const Matrix& m);
Matrix hamiltonian_from_json(const json& j);

// Reads the mutually exclusive {"budget": v} / {"alpha": a} pair from an
// object (budget = 1/a).
double budget_from_json(const json& j);

// {"h0": <hamiltonian>, "budget"|"alpha": v}
ControlProblem problem_from_json(const json& j);

// Target: dense matrix, or a preset gate name ("single-spin", "swap-chain").
Matrix target_from_json(const json& j);

// {"segments": [{"hc": <hamiltonian>, "duration": t}, ...],
//  "relax_budget": false}
ControlSchedule schedule_from_json(const json& j);

SearchConfig search_config_from_json(const json& j);

json log_branch_to_json(const LogBranch& b);
json qsl_result_to_json(const QslResult& r);
json search_report_to_json(const SearchReport& r);

// Parse failures throw JsonError; the CLI maps it to exit code 1.
struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qsl
