// hardycheck: command-line driver for the constants, the named checks and the batch scans.
//
// Exit codes: 0 passed, 1 a check failed, 2 invalid input, 3 numerical non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardy/json_io.hpp"
#include "hardy/suite.hpp"
#include "hardy/verify.hpp"

namespace {

using hardy::json;

enum Exit { exit_pass = 0, exit_fail = 1, exit_input = 2, exit_convergence = 3 };

struct RunConfig {
  double a = 1.0;
  double b = 1.0;
  int n = 3;
  std::string profile = "gaussian";
  std::vector<double> radii = {10.0, 100.0, 1000.0};
  std::string out;
  std::string format;  // empty: json for single checks, csv for batches
  std::optional<double> tol;
  std::optional<int> panels_per_unit;
  std::optional<int> gl_order;
  std::string config;
  std::string check_name;
  hardy::QuadratureSpec spec;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_b = true) {
  cmd->add_option("--a", cfg.a, "exponent of |p|");
  if (with_b) cmd->add_option("--b", cfg.b, "exponent of |q|");
  cmd->add_option("--n", cfg.n, "dimension");
  cmd->add_option("--out", cfg.out, "output file (default: stdout)");
  cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--config", cfg.config, "JSON file whose keys override the flags");
  cmd->add_option("--panels-per-unit", cfg.panels_per_unit, "quadrature panels per unit of log-radius");
  cmd->add_option("--gl-order", cfg.gl_order, "Gauss-Legendre points per panel");
}

void apply_config_file(RunConfig& cfg) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw hardy::DomainError("cannot open config file " + cfg.config);
  json j;
  try {
    j = json::parse(in);
    if (j.contains("a")) cfg.a = j["a"].get<double>();
    if (j.contains("b")) cfg.b = j["b"].get<double>();
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("profile")) cfg.profile = j["profile"].is_string() ? j["profile"].get<std::string>() : j["profile"].dump();
    if (j.contains("R")) cfg.radii = j["R"].get<std::vector<double>>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("quadrature")) cfg.spec = hardy::spec_from_json(j["quadrature"], cfg.spec);
  } catch (const json::exception& e) {
    throw hardy::DomainError(std::string("malformed config file: ") + e.what());
  }
  if (cfg.format != "" && cfg.format != "json" && cfg.format != "csv") throw hardy::DomainError("format must be json or csv");
}

void finalize(RunConfig& cfg) {
  apply_config_file(cfg);
  if (cfg.panels_per_unit) cfg.spec.panels_per_unit = *cfg.panels_per_unit;
  if (cfg.gl_order) cfg.spec.gl_order = *cfg.gl_order;
  cfg.spec.validate();
  if (cfg.tol && !(*cfg.tol > 0.0)) throw hardy::DomainError("--tol must be positive");
}

hardy::Tolerances tolerances(const RunConfig& cfg) {
  hardy::Tolerances t;
  if (cfg.tol) t.single_route = t.identity = *cfg.tol;
  return t;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw hardy::DomainError("cannot write " + cfg.out);
  f << text;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Value of a constant, or null when (a, b, n) is outside its range.
template <class F>
json try_const(F f) {
  try {
    return f();
  } catch (const hardy::DomainError&) {
    return nullptr;
  }
}

int cmd_constants(RunConfig& cfg) {
  const auto t = hardy::ExponentTriple::make(cfg.a, cfg.b, cfg.n);
  const double a = t.a, b = t.b;
  const int n = t.n;
  json bconst = json::object();
  for (auto [label, alpha] : {std::pair{"a", a}, std::pair{"b", b}, std::pair{"n-a", n - a}, std::pair{"n-b", n - b}}) {
    bconst[label] = {{"alpha", alpha}, {"value", try_const([&] { return hardy::b_const(alpha, n); })}};
  }
  json j = {{"schema", hardy::report_schema_version},
            {"params", {{"a", a}, {"b", b}, {"n", n}}},
            {"B", bconst},
            {"alpha_const", try_const([&] { return hardy::alpha_const(a, n); })},
            {"hardy_const", try_const([&] { return hardy::hardy_const(a, n); })},
            {"li_const", try_const([&] { return hardy::li_const(a, b, n); })},
            {"positivity_admissible", t.theorem1_ok()},
            {"identity_admissible", t.theorem2_ok()}};
  auto show = [](const json& v) { return v.is_null() ? std::string("undefined") : fmt(v.get<double>()); };
  std::ostringstream table;
  table << "a = " << fmt(a) << ", b = " << fmt(b) << ", n = " << n << "\n";
  for (const auto& [k, v] : bconst.items()) table << "B_{" << k << "}            " << show(v["value"]) << "\n";
  table << "alpha_{a,n}       " << show(j["alpha_const"]) << "\n"
        << "C_{a,n}           " << show(j["hardy_const"]) << "\n"
        << "L_{a,b,n}         " << show(j["li_const"]) << "\n"
        << "positivity range  " << (t.theorem1_ok() ? "yes" : "no") << "\n"
        << "identity range    " << (t.theorem2_ok() ? "yes" : "no") << "\n";
  if (cfg.out.empty()) {
    std::cout << table.str() << j.dump(2) << "\n";
  } else {
    std::cout << table.str();
    emit(cfg, j.dump(2) + "\n");
  }
  return exit_pass;
}

hardy::VerificationReport run_named_check(const RunConfig& cfg) {
  const auto tol = tolerances(cfg);
  const std::string& name = cfg.check_name;
  if (name == "kernel-positivity") {
    const auto t = hardy::ExponentTriple::make(cfg.a, cfg.b, cfg.n);
    return hardy::kernel_positivity(t.a, t.b, t.n);
  }
  if (name == "power-pairing") {
    if (!(cfg.a > 0.0 && cfg.a < cfg.n)) throw hardy::DomainError("power-pairing: need 0 < a < n");
    return hardy::fourier_power_pairing(cfg.a, cfg.n);
  }
  const auto psi = hardy::parse_profile(cfg.profile);
  if (name == "fractional") {
    if (cfg.n < 1) throw hardy::DomainError("dimension must be positive");
    return hardy::check_fractional_consistency(psi, cfg.a, cfg.n, cfg.spec, tol);
  }
  if (name == "hardy-gsr") {
    if (cfg.n < 1) throw hardy::DomainError("dimension must be positive");
    return hardy::check_hardy_gsr(psi, cfg.a, cfg.n, cfg.spec, tol);
  }
  if (name == "li-identity") {
    return hardy::check_li_identity(psi, hardy::ExponentTriple::make(cfg.a, cfg.b, cfg.n), cfg.spec, tol);
  }
  if (name == "a2-identity") {
    const auto t = hardy::ExponentTriple::make(2.0, cfg.b, cfg.n);
    return hardy::check_a2_identity(psi, t.b, t.n, cfg.spec, tol);
  }
  throw hardy::DomainError("unknown check '" + name + "'");
}

int cmd_check(RunConfig& cfg) {
  const auto rep = run_named_check(cfg);
  if (cfg.format == "csv") {
    emit(cfg, hardy::csv_header() + hardy::report_to_csv_row(cfg.check_name, rep));
  } else {
    emit(cfg, hardy::report_to_json(rep).dump(2) + "\n");
  }
  return rep.passed ? exit_pass : exit_fail;
}

int emit_batch(const RunConfig& cfg, const std::vector<hardy::JobOutcome>& outcomes) {
  const auto summary = hardy::summarize(outcomes);
  if (cfg.format == "json") {
    emit(cfg, hardy::outcomes_to_json(outcomes).dump(2) + "\n");
    if (!cfg.out.empty()) std::cout << hardy::summary_to_json(summary).dump() << "\n";
  } else {
    emit(cfg, hardy::outcomes_to_csv(outcomes));
    if (cfg.out.empty()) {
      std::cerr << hardy::summary_to_json(summary).dump() << "\n";
    } else {
      std::cout << hardy::summary_to_json(summary).dump() << "\n";
    }
  }
  for (const auto& o : outcomes) {
    if (o.status == hardy::JobStatus::error) std::cerr << o.label << ": " << o.message << "\n";
  }
  return summary.failed == 0 ? exit_pass : exit_fail;
}

// Batch commands propagate input and convergence errors of a single scan as exit codes.
int rethrow_single(const hardy::JobOutcome& o) {
  if (o.status == hardy::JobStatus::skipped) throw hardy::DomainError(o.message);
  if (o.status == hardy::JobStatus::error) throw hardy::ConvergenceError(o.message);
  return 0;
}

int cmd_scan(RunConfig& cfg) {
  const auto t = hardy::ExponentTriple::make(cfg.a, cfg.b, cfg.n);
  if (!t.theorem1_ok()) throw hardy::DomainError("scan: need n >= a + b and min(a, b) <= 2");
  const auto spec = cfg.spec;
  const auto tol = tolerances(cfg);
  std::vector<hardy::CheckJob> jobs;
  for (const auto& psi : hardy::random_gaussian_family()) {
    jobs.push_back({hardy::detail::triple_label("positivity", t) + " " + psi.describe(),
                    [=] { return hardy::positivity_scan({psi}, t, spec, tol); }});
  }
  const auto outcomes = hardy::run_jobs(jobs, hardy::worker_count_from_env());
  for (const auto& o : outcomes) rethrow_single(o);
  return emit_batch(cfg, outcomes);
}

int cmd_sharpness(RunConfig& cfg) {
  const auto t = hardy::ExponentTriple::make(cfg.a, cfg.b, cfg.n);
  if (!t.theorem2_ok()) throw hardy::DomainError("sharpness: need a + b <= n and 0 < min(a, b) < 2");
  for (double r : cfg.radii) {
    if (!(r > 1.0)) throw hardy::DomainError("sharpness: every R must exceed 1");
  }
  const auto spec = cfg.spec;
  const auto radii = cfg.radii;
  const std::vector<hardy::CheckJob> jobs = {
      {hardy::detail::triple_label("sharpness", t), [=] { return hardy::sharpness_probe(t, radii, spec); }}};
  const auto outcomes = hardy::run_jobs(jobs, 1);
  rethrow_single(outcomes.front());
  return emit_batch(cfg, outcomes);
}

int cmd_report_all(RunConfig& cfg) {
  const auto jobs = hardy::default_suite(cfg.spec, tolerances(cfg));
  return emit_batch(cfg, hardy::run_jobs(jobs, hardy::worker_count_from_env()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of fractional Hardy and Jordan-product inequalities"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* constants = app.add_subcommand("constants", "print the constants for (a, b, n)");
  add_common(constants, cfg);

  auto* check = app.add_subcommand("check", "run one named check");
  check->add_option("name", cfg.check_name, "check name")
      ->required()
      ->check(CLI::IsMember(
          {"fractional", "hardy-gsr", "li-identity", "a2-identity", "kernel-positivity", "power-pairing"}));
  add_common(check, cfg);
  check->add_option("--profile", cfg.profile, "gaussian, r2 or a JSON profile object");
  check->add_option("--tol", cfg.tol, "tolerance override");

  auto* scan = app.add_subcommand("scan", "positivity over the random GaussianPoly family");
  add_common(scan, cfg);
  scan->add_option("--tol", cfg.tol, "tolerance override");

  auto* sharp = app.add_subcommand("sharpness", "Rayleigh quotients of cut-off powers");
  add_common(sharp, cfg);
  sharp->add_option("--R", cfg.radii, "cut-off scales")->delimiter(',');

  auto* all = app.add_subcommand("report-all", "run the default suite");
  all->add_option("--out", cfg.out, "output file (default: stdout)");
  all->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  all->add_option("--config", cfg.config, "JSON file whose keys override the flags");
  all->add_option("--tol", cfg.tol, "tolerance override");
  all->add_option("--panels-per-unit", cfg.panels_per_unit, "quadrature panels per unit of log-radius");
  all->add_option("--gl-order", cfg.gl_order, "Gauss-Legendre points per panel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    finalize(cfg);
    if (constants->parsed()) return cmd_constants(cfg);
    if (check->parsed()) return cmd_check(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (sharp->parsed()) return cmd_sharpness(cfg);
    if (all->parsed()) return cmd_report_all(cfg);
  } catch (const hardy::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return exit_input;
  } catch (const hardy::ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return exit_convergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_convergence;
  }
  return exit_input;
}
