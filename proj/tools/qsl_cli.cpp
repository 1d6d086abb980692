// Command-line front end: reads problem/schedule JSON, runs the
// computations, writes machine-readable JSON to stdout and a short human
// summary to stderr.
//
// Exit codes: 0 ok, 1 parse error, 2 validation error,
//             3 verification discrepancy.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsl/json_io.hpp"
#include "qsl/oracle.hpp"
#include "qsl/randers.hpp"

namespace {

using qsl::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDiscrepancy = 3;

struct GlobalFlags {
  std::string input = "-";
  std::string output = "-";
  unsigned seed = 0;
  double tol_spec = qsl::kTolSpec;
  double dist_tol = 1e-6;
  int branch_max_shift = -1;  // -1: take from input file (default 0)
  bool quotient_center = false;
  bool relax_budget = false;
};

json read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw qsl::JsonError("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw qsl::JsonError(std::string("invalid JSON: ") + e.what());
  }
}

void write_output(const GlobalFlags& flags, const json& j) {
  if (flags.output == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(flags.output);
    if (!out) throw std::runtime_error("cannot open output file: " + flags.output);
    out << j.dump(2) << "\n";
  }
}

int report_violations(const qsl::ControlProblem& p, double tol) {
  const auto violations = qsl::validate(p, tol);
  if (violations.empty()) return kExitOk;
  for (const auto& v : violations)
    std::cerr << "validation: " << v.name << " (measured " << v.measured
              << ")\n";
  return kExitValidation;
}

int cmd_tmin(const GlobalFlags& flags) {
  const json in = read_input(flags.input);
  const qsl::ControlProblem p = qsl::problem_from_json(in);
  if (!in.contains("target")) throw qsl::JsonError("tmin: missing \"target\"");
  const qsl::Matrix o = qsl::target_from_json(in.at("target"));
  if (const int rc = report_violations(p, flags.tol_spec)) return rc;

  int max_shift = in.value("branch_max_shift", 0);
  if (flags.branch_max_shift >= 0) max_shift = flags.branch_max_shift;

  if (max_shift > 0) {
    const auto results =
        qsl::t_opt_over_branches(p, o, max_shift, flags.tol_spec);
    json out = json::array();
    for (const auto& r : results) out.push_back(qsl::qsl_result_to_json(r));
    write_output(flags, json{{"results", std::move(out)}});
    std::cerr << "t_opt (best of " << results.size()
              << " branches): " << results.front().t_opt << "\n";
  } else {
    const qsl::QslResult r =
        qsl::t_opt_closed_form(p, qsl::make_target(o, flags.tol_spec),
                               flags.tol_spec);
    write_output(flags, qsl::qsl_result_to_json(r));
    std::cerr << "t_opt = " << r.t_opt << " (rho = " << r.rho << ")\n";
  }
  return kExitOk;
}

int cmd_norm(const GlobalFlags& flags) {
  const json in = read_input(flags.input);
  const qsl::ControlProblem p = qsl::problem_from_json(in);
  if (!in.contains("generator"))
    throw qsl::JsonError("norm: missing \"generator\"");
  const qsl::Matrix a = qsl::hamiltonian_from_json(in.at("generator"));
  if (const int rc = report_violations(p, flags.tol_spec)) return rc;

  json out{{"norm_general", qsl::randers_norm_general(p, a, flags.tol_spec)}};
  try {
    out["norm_su"] = qsl::randers_norm_su(p, qsl::Matrix(-a), flags.tol_spec);
  } catch (const std::domain_error&) {
    out["norm_su"] = nullptr;  // Tr(A H0) == 0: specialized form is singular
  }
  write_output(flags, out);
  std::cerr << "norm_general = " << out["norm_general"].get<double>() << "\n";
  return kExitOk;
}

int cmd_length(const GlobalFlags& flags) {
  const json in = read_input(flags.input);
  const qsl::ControlProblem p = qsl::problem_from_json(in);
  if (!in.contains("schedule"))
    throw qsl::JsonError("length: missing \"schedule\"");
  qsl::ControlSchedule schedule = qsl::schedule_from_json(in.at("schedule"));
  if (flags.relax_budget) schedule.relax_budget = true;
  if (const int rc = report_violations(p, flags.tol_spec)) return rc;

  double elapsed = 0.0;
  for (const auto& seg : schedule.segments) elapsed += seg.duration;
  double length = 0.0;
  try {
    length = qsl::curve_length(p, schedule, flags.tol_spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  }
  write_output(flags, json{{"length", length},
                           {"elapsed", elapsed},
                           {"unit_speed_residual", std::abs(length - elapsed)}});
  std::cerr << "length = " << length << " over " << elapsed << " elapsed\n";
  return kExitOk;
}

int cmd_verify(const GlobalFlags& flags) {
  const json in = read_input(flags.input);
  const qsl::ControlProblem p = qsl::problem_from_json(in);
  if (!in.contains("target"))
    throw qsl::JsonError("verify: missing \"target\"");
  const qsl::Matrix o = qsl::target_from_json(in.at("target"));
  if (const int rc = report_violations(p, flags.tol_spec)) return rc;

  qsl::SearchConfig cfg = qsl::search_config_from_json(
      in.contains("search") ? in.at("search") : json(nullptr));
  cfg.seed = flags.seed;
  cfg.dist_tol = flags.dist_tol;
  cfg.quotient_center = cfg.quotient_center || flags.quotient_center;
  if (flags.branch_max_shift >= 0) cfg.branch_max_shift = flags.branch_max_shift;

  const auto branches =
      qsl::t_opt_over_branches(p, o, cfg.branch_max_shift, flags.tol_spec);
  double min_t_opt = 0.0;
  for (const auto& r : branches)
    if (r.t_opt > 0.0) { min_t_opt = r.t_opt; break; }

  const qsl::SearchReport report = qsl::brute_force_min_time(p, o, cfg, flags.tol_spec);
  const double ratio =
      min_t_opt > 0.0 ? report.best_time / min_t_opt : 0.0;

  json out = json::array();
  for (const auto& r : branches) out.push_back(qsl::qsl_result_to_json(r));
  write_output(flags, json{{"branches", std::move(out)},
                           {"search", qsl::search_report_to_json(report)},
                           {"min_t_opt", min_t_opt},
                           {"ratio", ratio}});
  std::cerr << "closed form " << min_t_opt << ", search " << report.best_time
            << " (ratio " << ratio << ", hit=" << report.hit << ")\n";

  const bool ok = report.hit && ratio >= 1.0 - 1e-6 && ratio <= 1.05;
  return ok ? kExitOk : kExitDiscrepancy;
}

int cmd_preset_report(const GlobalFlags& flags, const std::string& name_flag,
                      const std::vector<std::string>& param_flags) {
  std::string name = name_flag;
  std::map<std::string, double> params;
  if (name.empty()) {
    const json in = read_input(flags.input);
    name = in.value("preset", "");
    if (in.contains("params"))
      for (const auto& [k, v] : in.at("params").items())
        params[k] = v.get<double>();
  }
  for (const std::string& kv : param_flags) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw qsl::JsonError("preset parameter must be key=value: " + kv);
    params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  if (name.empty()) throw qsl::JsonError("preset-report: missing preset name");

  std::pair<qsl::ControlProblem, qsl::TargetGate> setup;
  try {
    setup = qsl::preset(name, params);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  }
  const auto& [p, g] = setup;
  const qsl::QslResult r = qsl::t_opt_closed_form(p, g, flags.tol_spec);

  // Every intermediate quantity of the worked setup, for line-by-line diffs.
  json out{{"preset", name},
           {"dim", p.dim},
           {"h0", qsl::matrix_to_json(p.h0)},
           {"budget", p.budget},
           {"alpha", 1.0 / p.budget},
           {"tr_h0_sq", qsl::drift_strength(p)},
           {"rho", r.rho},
           {"target", qsl::matrix_to_json(g.o)},
           {"log_o", qsl::matrix_to_json(g.branch.matrix)},
           {"tr_h0_logo", {r.tr_h0_logo.real(), r.tr_h0_logo.imag()}},
           {"tr_logo_sq", r.tr_logo_sq},
           {"t_opt", r.t_opt},
           {"root_sign", r.root_sign},
           {"hc_opt", qsl::matrix_to_json(r.hc_opt)},
           {"budget_residual", r.budget_residual}};
  write_output(flags, out);
  std::cerr << name << ": rho = " << r.rho << ", t_opt = " << r.t_opt << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constant-control quantum speed limits on SU(N)"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand name

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "RNG seed for the search sampler");
  app.add_option("--tol-spec", flags.tol_spec, "structural tolerance");
  app.add_option("--dist-tol", flags.dist_tol, "gate match tolerance");
  app.add_option("--branch-max-shift", flags.branch_max_shift,
                 "eigenphase shift range for branch enumeration");
  app.add_flag("--quotient-center", flags.quotient_center,
               "match targets up to an N-th root of unity phase");
  app.add_flag("--relax-budget", flags.relax_budget,
               "accept off-budget schedule segments");

  std::string preset_name;
  std::vector<std::string> preset_params;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("-i,--input", flags.input, "input JSON file, - for stdin");
    cmd->add_option("-o,--output", flags.output, "output JSON file, - for stdout");
  };
  auto* tmin = app.add_subcommand("tmin", "closed-form optimal time");
  auto* norm = app.add_subcommand("norm", "Randers norm of a generator");
  auto* length = app.add_subcommand("length", "length of a control schedule");
  auto* verify = app.add_subcommand("verify", "closed form vs brute-force search");
  auto* preset_report =
      app.add_subcommand("preset-report", "worked-setup report");
  for (auto* cmd : {tmin, norm, length, verify}) add_io(cmd);
  add_io(preset_report);
  preset_report->add_option("--name", preset_name,
                            "preset name (single-spin, swap-chain)");
  preset_report->add_option("--param", preset_params,
                            "preset parameter key=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tmin->parsed()) return cmd_tmin(flags);
    if (norm->parsed()) return cmd_norm(flags);
    if (length->parsed()) return cmd_length(flags);
    if (verify->parsed()) return cmd_verify(flags);
    if (preset_report->parsed())
      return cmd_preset_report(flags, preset_name, preset_params);
  } catch (const qsl::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
