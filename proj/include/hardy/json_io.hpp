#pragma once

// JSON and CSV serialisation of profiles, quadrature settings and reports.
// Needs nlohmann/json on the include path (vendor/json.hpp).

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hardy/errors.hpp"
#include "hardy/suite.hpp"
#include "hardy/testfuncs.hpp"
#include "hardy/types.hpp"

namespace hardy {

using json = nlohmann::json;

inline constexpr int report_schema_version = 1;

inline json profile_to_json(const RadialProfile& psi) {
  if (psi.is_gaussian_poly()) return {{"family", "gaussian_poly"}, {"coeffs", psi.as_gaussian_poly().coeffs}};
  const auto& p = psi.as_power_cutoff();
  return {{"family", "power_cutoff"}, {"gamma_exp", p.gamma_exp}, {"cutoff_scale", p.cutoff_scale}};
}

inline RadialProfile profile_from_json(const json& j) {
  try {
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "gaussian") return RadialProfile::gaussian();
      if (s == "r2") return RadialProfile::gaussian_poly({0.0, 0.0, 1.0});
      throw DomainError("unknown profile name '" + s + "' (use gaussian, r2 or a JSON object)");
    }
    const auto family = j.at("family").get<std::string>();
    if (family == "gaussian" || family == "gaussian_poly") {
      return RadialProfile::gaussian_poly(j.value("coeffs", std::vector<double>{1.0}));
    }
    if (family == "power_cutoff") {
      return RadialProfile::power_cutoff(j.at("gamma_exp").get<double>(), j.at("cutoff_scale").get<double>());
    }
    throw DomainError("unknown profile family '" + family + "'");
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed profile: ") + e.what());
  }
}

/// Accepts "gaussian", "r2", or a JSON object text.
inline RadialProfile parse_profile(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw DomainError(std::string("profile is not valid JSON: ") + e.what());
    }
    return profile_from_json(j);
  }
  return profile_from_json(json(text));
}

inline json spec_to_json(const QuadratureSpec& s) {
  return {{"u_min", s.u_min},
          {"u_max", s.u_max},
          {"panels_per_unit", s.panels_per_unit},
          {"gl_order", s.gl_order},
          {"diagonal_grading", s.diagonal_grading},
          {"diagonal_levels", s.diagonal_levels},
          {"graded_subdivision", s.graded_subdivision},
          {"near_width", s.near_width},
          {"refinement_factor", s.refinement_factor}};
}

/// Fields absent from `j` keep their values in `base`.
inline QuadratureSpec spec_from_json(const json& j, QuadratureSpec base = {}) {
  try {
    base.u_min = j.value("u_min", base.u_min);
    base.u_max = j.value("u_max", base.u_max);
    base.panels_per_unit = j.value("panels_per_unit", base.panels_per_unit);
    base.gl_order = j.value("gl_order", base.gl_order);
    base.diagonal_grading = j.value("diagonal_grading", base.diagonal_grading);
    base.diagonal_levels = j.value("diagonal_levels", base.diagonal_levels);
    base.graded_subdivision = j.value("graded_subdivision", base.graded_subdivision);
    base.near_width = j.value("near_width", base.near_width);
    base.refinement_factor = j.value("refinement_factor", base.refinement_factor);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed quadrature settings: ") + e.what());
  }
  base.validate();
  return base;
}

namespace detail {

// JSON has no inf/nan; keep them visible as strings instead of null.
inline json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline json form_to_json(const FormResult& f) {
  json j = {{"value", number(f.value)}, {"error", number(f.error_estimate)}, {"route", f.route}};
  if (!f.notes.empty()) j["notes"] = f.notes;
  return j;
}

inline double number_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

inline FormResult form_from_json(const json& j) {
  FormResult f;
  f.value = number_from(j.at("value"));
  f.error_estimate = number_from(j.at("error"));
  f.route = j.value("route", std::string{});
  f.notes = j.value("notes", std::vector<std::string>{});
  return f;
}

}  // namespace detail

/// Serialises a report. With `with_runtime` false the result depends only on the inputs.
inline json report_to_json(const VerificationReport& r, bool with_runtime = true) {
  json params = {{"a", r.a}, {"b", r.b}, {"n", r.n}, {"quadrature", spec_to_json(r.spec)}};
  params["profile"] = r.profile;
  json j = {{"schema", report_schema_version},
            {"check_name", r.check_name},
            {"params", params},
            {"lhs", detail::form_to_json(r.lhs)},
            {"rhs", detail::form_to_json(r.rhs)},
            {"abs_discrepancy", detail::number(r.abs_discrepancy)},
            {"rel_discrepancy", detail::number(r.rel_discrepancy)},
            {"tolerance", r.tolerance},
            {"abs_tolerance", r.abs_tolerance},
            {"criterion", r.criterion},
            {"passed", r.passed}};
  if (with_runtime) j["runtime_ms"] = r.runtime_ms;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.extras.empty()) {
    json ex = json::array();
    for (const auto& [k, v] : r.extras) ex.push_back({{"name", k}, {"value", detail::number(v)}});
    j["extras"] = ex;
  }
  return j;
}

inline VerificationReport report_from_json(const json& j) {
  if (j.value("schema", 0) != report_schema_version) throw DomainError("unsupported report schema");
  VerificationReport r;
  r.check_name = j.at("check_name").get<std::string>();
  const auto& p = j.at("params");
  r.a = p.at("a").get<double>();
  r.b = p.at("b").get<double>();
  r.n = p.at("n").get<int>();
  r.profile = p.value("profile", std::string{});
  if (p.contains("quadrature")) r.spec = spec_from_json(p.at("quadrature"));
  r.lhs = detail::form_from_json(j.at("lhs"));
  r.rhs = detail::form_from_json(j.at("rhs"));
  r.abs_discrepancy = detail::number_from(j.at("abs_discrepancy"));
  r.rel_discrepancy = detail::number_from(j.at("rel_discrepancy"));
  r.tolerance = j.at("tolerance").get<double>();
  r.abs_tolerance = j.value("abs_tolerance", 0.0);
  r.criterion = j.value("criterion", std::string{"relative"});
  r.passed = j.at("passed").get<bool>();
  r.runtime_ms = j.value("runtime_ms", 0LL);
  r.notes = j.value("notes", std::vector<std::string>{});
  if (j.contains("extras")) {
    for (const auto& e : j.at("extras")) r.extras.emplace_back(e.at("name").get<std::string>(), detail::number_from(e.at("value")));
  }
  return r;
}

/// Column order of the CSV report table.
inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "job",       "check_name", "a",          "b",          "n",        "profile",          "lhs_value",
      "lhs_error", "lhs_route",  "rhs_value",  "rhs_error",  "rhs_route", "abs_discrepancy", "rel_discrepancy",
      "tolerance", "criterion",  "passed",     "runtime_ms"};
  return cols;
}

namespace detail {

inline std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

inline std::string csv_header() {
  std::string h;
  for (std::size_t i = 0; i < csv_columns().size(); ++i) h += (i ? "," : "") + csv_columns()[i];
  return h + "\n";
}

inline std::string report_to_csv_row(const std::string& job, const VerificationReport& r) {
  using detail::csv_number;
  using detail::csv_text;
  std::ostringstream os;
  os << csv_text(job) << ',' << csv_text(r.check_name) << ',' << csv_number(r.a) << ',' << csv_number(r.b) << ','
     << r.n << ',' << csv_text(r.profile) << ',' << csv_number(r.lhs.value) << ',' << csv_number(r.lhs.error_estimate)
     << ',' << csv_text(r.lhs.route) << ',' << csv_number(r.rhs.value) << ',' << csv_number(r.rhs.error_estimate)
     << ',' << csv_text(r.rhs.route) << ',' << csv_number(r.abs_discrepancy) << ',' << csv_number(r.rel_discrepancy)
     << ',' << csv_number(r.tolerance) << ',' << csv_text(r.criterion) << ',' << (r.passed ? "true" : "false") << ','
     << r.runtime_ms << '\n';
  return os.str();
}

inline json summary_to_json(const SuiteSummary& s) {
  return {{"schema", report_schema_version}, {"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}};
}

/// Bundle of all outcomes: summary, per-job status and reports.
inline json outcomes_to_json(const std::vector<JobOutcome>& outcomes, bool with_runtime = true) {
  json jobs = json::array();
  for (const auto& o : outcomes) {
    json j = {{"label", o.label}};
    j["status"] = o.status == JobStatus::ran ? "ran" : (o.status == JobStatus::skipped ? "skipped" : "error");
    if (!o.message.empty()) j["message"] = o.message;
    json reps = json::array();
    for (const auto& r : o.reports) reps.push_back(report_to_json(r, with_runtime));
    j["reports"] = reps;
    jobs.push_back(j);
  }
  json out = summary_to_json(summarize(outcomes));
  out["jobs"] = jobs;
  return out;
}

inline std::string outcomes_to_csv(const std::vector<JobOutcome>& outcomes) {
  std::string s = csv_header();
  for (const auto& o : outcomes) {
    for (const auto& r : o.reports) s += report_to_csv_row(o.label, r);
  }
  return s;
}

}  // namespace hardy
