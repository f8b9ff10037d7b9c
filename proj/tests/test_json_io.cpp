#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>

#include "hardy/json_io.hpp"

namespace {

using hardy::json;
using hardy::RadialProfile;

TEST(ProfileJson, RoundTrip) {
  for (const auto& psi : {RadialProfile::gaussian(), RadialProfile::gaussian_poly({0.5, -1.0, 2.0}),
                          RadialProfile::power_cutoff(1.5, 100.0)}) {
    const auto back = hardy::profile_from_json(hardy::profile_to_json(psi));
    EXPECT_EQ(back.describe(), psi.describe());
  }
}

TEST(ProfileJson, NamesAndErrors) {
  EXPECT_EQ(hardy::parse_profile("gaussian").describe(), "gaussian_poly[1]");
  EXPECT_EQ(hardy::parse_profile("r2").describe(), "gaussian_poly[0,0,1]");
  EXPECT_EQ(hardy::parse_profile(R"({"family":"power_cutoff","gamma_exp":1,"cutoff_scale":10})").describe(),
            "power_cutoff[gamma=1,R=10]");
  EXPECT_THROW((void)hardy::parse_profile("triangle"), hardy::DomainError);
  EXPECT_THROW((void)hardy::parse_profile("{not json"), hardy::DomainError);
  EXPECT_THROW((void)hardy::parse_profile(R"({"family":"power_cutoff","gamma_exp":1})"), hardy::DomainError);
  EXPECT_THROW((void)hardy::parse_profile(R"({"family":"power_cutoff","gamma_exp":1,"cutoff_scale":0.5})"),
               hardy::DomainError);
}

TEST(SpecJson, OverridesOnlyGivenFields) {
  hardy::QuadratureSpec base;
  const auto s = hardy::spec_from_json(json{{"gl_order", 8}, {"panels_per_unit", 3}}, base);
  EXPECT_EQ(s.gl_order, 8);
  EXPECT_EQ(s.panels_per_unit, 3);
  EXPECT_EQ(s.u_min, base.u_min);
  EXPECT_EQ(hardy::spec_from_json(hardy::spec_to_json(s)), s);
  EXPECT_THROW((void)hardy::spec_from_json(json{{"gl_order", 2}}), hardy::DomainError);
  EXPECT_THROW((void)hardy::spec_from_json(json{{"gl_order", "many"}}), hardy::DomainError);
}

hardy::VerificationReport sample_report() {
  hardy::VerificationReport r;
  r.check_name = "li-identity";
  r.a = 1.0;
  r.b = 0.5;
  r.n = 3;
  r.profile = "gaussian_poly[1]";
  r.lhs.value = 1.25;
  r.lhs.error_estimate = 1e-9;
  r.lhs.route = "integral";
  r.rhs.value = 1.2500001;
  r.rhs.route = "integral";
  r.abs_discrepancy = 1e-7;
  r.rel_discrepancy = 8e-8;
  r.tolerance = 1e-2;
  r.passed = true;
  r.runtime_ms = 42;
  r.notes = {"note"};
  r.extras = {{"li_const", 0.5}};
  return r;
}

TEST(ReportJson, SchemaFields) {
  const auto j = hardy::report_to_json(sample_report());
  EXPECT_EQ(j.at("schema"), 1);
  for (const char* key : {"check_name", "params", "lhs", "rhs", "rel_discrepancy", "tolerance", "passed", "runtime_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j.at("lhs").contains("value"));
  EXPECT_TRUE(j.at("lhs").contains("error"));
  EXPECT_EQ(j.at("params").at("n"), 3);
  EXPECT_FALSE(hardy::report_to_json(sample_report(), false).contains("runtime_ms"));
}

TEST(ReportJson, RoundTrip) {
  const auto r = sample_report();
  const auto back = hardy::report_from_json(json::parse(hardy::report_to_json(r).dump()));
  EXPECT_EQ(back.check_name, r.check_name);
  EXPECT_EQ(back.lhs.value, r.lhs.value);
  EXPECT_EQ(back.rhs.value, r.rhs.value);
  EXPECT_EQ(back.rel_discrepancy, r.rel_discrepancy);
  EXPECT_EQ(back.passed, r.passed);
  EXPECT_EQ(back.runtime_ms, r.runtime_ms);
  EXPECT_EQ(back.extras, r.extras);
  EXPECT_EQ(back.spec, r.spec);
}

TEST(ReportJson, NonFiniteValuesStayVisible) {
  auto r = sample_report();
  r.lhs.value = std::numeric_limits<double>::infinity();
  r.rel_discrepancy = std::numeric_limits<double>::quiet_NaN();
  const auto j = hardy::report_to_json(r);
  EXPECT_EQ(j.at("lhs").at("value"), "inf");
  EXPECT_EQ(j.at("rel_discrepancy"), "nan");
  const auto back = hardy::report_from_json(j);
  EXPECT_TRUE(std::isinf(back.lhs.value));
  EXPECT_TRUE(std::isnan(back.rel_discrepancy));
}

TEST(Csv, HeaderAndRowHaveTheSameColumnCount) {
  const std::string header = hardy::csv_header();
  auto r = sample_report();
  r.profile = "gaussian_poly[1,2]";  // contains a comma, so it is quoted
  const std::string row = hardy::report_to_csv_row("job, quoted", r);
  auto count_fields = [](const std::string& s) {
    int fields = 1;
    bool quoted = false;
    for (char c : s) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) ++fields;
    }
    return fields;
  };
  EXPECT_EQ(count_fields(header), static_cast<int>(hardy::csv_columns().size()));
  EXPECT_EQ(count_fields(row), count_fields(header));
  EXPECT_NE(row.find("\"gaussian_poly[1,2]\""), std::string::npos);
}

TEST(Bundle, SummaryCounts) {
  std::vector<hardy::JobOutcome> outs(3);
  outs[0].label = "a";
  outs[0].reports = {sample_report()};
  outs[1].label = "b";
  outs[1].status = hardy::JobStatus::skipped;
  outs[1].message = "outside domain";
  outs[2].label = "c";
  auto failing = sample_report();
  failing.passed = false;
  outs[2].reports = {failing, sample_report()};
  const auto j = hardy::outcomes_to_json(outs);
  EXPECT_EQ(j.at("passed"), 2);
  EXPECT_EQ(j.at("failed"), 1);
  EXPECT_EQ(j.at("skipped"), 1);
  EXPECT_EQ(j.at("jobs").size(), 3u);
  EXPECT_EQ(j.at("jobs")[1].at("status"), "skipped");
  const auto csv = hardy::outcomes_to_csv(outs);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

}  // namespace
