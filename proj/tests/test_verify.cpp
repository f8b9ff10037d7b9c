#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/suite.hpp"
#include "hardy/verify.hpp"

namespace {

using hardy::ExponentTriple;
using hardy::RadialProfile;
using hardy::VerificationReport;

// Recomputes a two-sided verdict from the stored numbers.
bool rederive_two_sided(const VerificationReport& r) {
  const double scale = std::max(std::abs(r.lhs.value), std::abs(r.rhs.value));
  const double diff = std::abs(r.lhs.value - r.rhs.value);
  return std::isfinite(r.lhs.value) && std::isfinite(r.rhs.value) &&
         (diff <= r.tolerance * scale || diff <= r.abs_tolerance);
}

TEST(FractionalConsistency, Examples) {
  const auto r1 = hardy::check_fractional_consistency(RadialProfile::gaussian(), 1.0, 3);
  EXPECT_TRUE(r1.passed);
  EXPECT_NEAR(r1.lhs.value, 2.0 * std::numbers::pi, 1e-9);
  EXPECT_NEAR(r1.rhs.value, 2.0 * std::numbers::pi, 1e-3 * 2.0 * std::numbers::pi);
  EXPECT_EQ(r1.passed, rederive_two_sided(r1));
  EXPECT_TRUE(hardy::check_fractional_consistency(RadialProfile::gaussian(), 0.5, 1).passed);
  const auto r3 = hardy::check_fractional_consistency(RadialProfile::gaussian_poly({0.0, 0.0, 1.0}), 1.5, 2);
  EXPECT_TRUE(r3.passed);
  EXPECT_EQ(r3.passed, rederive_two_sided(r3));
  EXPECT_THROW((void)hardy::check_fractional_consistency(RadialProfile::gaussian(), 2.0, 3), hardy::DomainError);
}

TEST(HardyGsrCheck, Examples) {
  for (auto [a, n] : {std::pair{1.0, 3}, std::pair{1.5, 2}}) {
    const auto r = hardy::check_hardy_gsr(RadialProfile::gaussian(), a, n);
    EXPECT_TRUE(r.passed) << a << " " << n << " rel " << r.rel_discrepancy;
    EXPECT_EQ(r.passed, rederive_two_sided(r));
  }
  EXPECT_THROW((void)hardy::check_hardy_gsr(RadialProfile::gaussian(), 1.0, 1), hardy::DomainError);
}

TEST(HardyGsrCheck, NearExtremalCutoffUsesTheAbsoluteBranchOrPasses) {
  const auto r = hardy::check_hardy_gsr(RadialProfile::power_cutoff(1.0, 100.0), 1.0, 3);
  EXPECT_TRUE(r.passed) << "rel " << r.rel_discrepancy << " abs " << r.abs_discrepancy;
  // both sides are small compared with the two terms they are built from
  double kinetic = 0.0;
  for (const auto& [k, v] : r.extras)
    if (k == "kinetic") kinetic = v;
  EXPECT_LT(std::abs(r.rhs.value), 0.1 * kinetic);
}

TEST(JordanIdentityCheck, Examples) {
  for (auto [a, b, n] : {std::tuple{1.0, 1.0, 3}, std::tuple{0.5, 1.5, 4}, std::tuple{1.0, 2.0, 3}}) {
    const auto r = hardy::check_li_identity(RadialProfile::gaussian(), ExponentTriple::make(a, b, n));
    EXPECT_TRUE(r.passed) << a << " " << b << " " << n << " rel " << r.rel_discrepancy;
    EXPECT_EQ(r.passed, rederive_two_sided(r));
  }
  // b = n - a: the constant vanishes and the left side is the plain Jordan form
  const auto r = hardy::check_li_identity(RadialProfile::gaussian(), ExponentTriple::make(1.0, 2.0, 3));
  double jordan = 0.0;
  for (const auto& [k, v] : r.extras)
    if (k == "jordan") jordan = v;
  EXPECT_EQ(r.lhs.value, jordan);
  EXPECT_THROW((void)hardy::check_li_identity(RadialProfile::gaussian(), ExponentTriple::make(1.0, 3.0, 3)),
               hardy::DomainError);
}

TEST(JordanIdentityCheck, SquareCaseUsesSpectralAndLocalRoutes) {
  const auto r = hardy::check_li_identity(RadialProfile::gaussian(), ExponentTriple::make(2.0, 1.0, 4));
  EXPECT_TRUE(r.passed) << r.rel_discrepancy;
  EXPECT_EQ(r.lhs.route, "spectral");
  EXPECT_EQ(r.rhs.route, "local");
}

TEST(A2Identity, Examples) {
  for (auto [b, n] : {std::pair{1.0, 3}, std::pair{1.0, 5}, std::pair{2.0, 5}}) {
    const auto r = hardy::check_a2_identity(RadialProfile::gaussian(), b, n);
    EXPECT_TRUE(r.passed) << b << " " << n << " rel " << r.rel_discrepancy;
    EXPECT_LE(r.rel_discrepancy, 1e-3);
  }
  // b = n - 2: the Jordan form equals the Hardy form of phi
  const auto r = hardy::check_a2_identity(RadialProfile::gaussian(), 1.0, 3);
  double margin = 1.0;
  for (const auto& [k, v] : r.extras)
    if (k == "hardy_margin") margin = v;
  EXPECT_LE(std::abs(margin), 1e-2 * r.lhs.value);
  EXPECT_THROW((void)hardy::check_a2_identity(RadialProfile::gaussian(), 2.0, 3), hardy::DomainError);
  // b -> 0 reduces to the plain second-order form
  const auto small = hardy::check_a2_identity(RadialProfile::gaussian(), 1e-8, 3);
  EXPECT_NEAR(small.lhs.value, hardy::spectral_form(RadialProfile::gaussian(), 2.0, 3).value, 1e-6);
}

TEST(KernelPositivity, Examples) {
  EXPECT_NEAR(hardy::kernel_numerator(2.0, 1.0, 1.0, 3), 0.37867965644035684, 1e-15);
  for (int n = 1; n <= 6; ++n) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {0.25, 1.0, 2.0}) {
        if (!(n - a >= b)) continue;
        EXPECT_EQ(hardy::kernel_numerator(1.0, a, b, n), 0.0);
        EXPECT_TRUE(hardy::kernel_positivity(a, b, n).passed) << a << " " << b << " " << n;
      }
    }
  }
  const auto degenerate = hardy::kernel_positivity(1.0, 2.0, 3);
  EXPECT_TRUE(degenerate.passed);
  for (const auto& [k, v] : degenerate.extras) {
    if (k == "min" || k == "max") {
      EXPECT_EQ(v, 0.0);
    }
  }
  EXPECT_THROW((void)hardy::kernel_positivity(1.0, 2.5, 3), hardy::DomainError);
}

TEST(KernelPositivity, GridSize) {
  const auto g = hardy::log_grid(1e-3, 1e3, 1000);
  ASSERT_EQ(g.size(), 1000u);
  EXPECT_DOUBLE_EQ(g.front(), 1e-3);
  EXPECT_NEAR(g.back(), 1e3, 1e-9);
}

TEST(Monotonicity, Examples) {
  EXPECT_TRUE(hardy::monotonicity_scan(1.0, 3, {0.0, 0.5, 1.0, 1.5, 2.0}).passed);
  const auto r = hardy::monotonicity_scan(2.0, 5, {0.0, 1.0, 2.0, 3.0});
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.extras.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.extras[i].second, 0.25 * (9.0 - double(i * i)), 1e-12);
  EXPECT_TRUE(hardy::monotonicity_scan(1.0, 3, {0.7}).passed);
  EXPECT_THROW((void)hardy::monotonicity_scan(1.0, 3, {1.0, 0.5}), hardy::DomainError);
  EXPECT_THROW((void)hardy::monotonicity_scan(1.0, 3, {0.0, 2.5}), hardy::DomainError);
}

TEST(Positivity, RandomFamilyIsDeterministic) {
  const auto f1 = hardy::random_gaussian_family();
  const auto f2 = hardy::random_gaussian_family();
  ASSERT_EQ(f1.size(), 10u);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    EXPECT_EQ(f1[i].describe(), f2[i].describe());
    for (double c : f1[i].as_gaussian_poly().coeffs) {
      EXPECT_GE(c, -2.0);
      EXPECT_LE(c, 2.0);
    }
  }
}

TEST(Positivity, NamedCases) {
  const auto family = hardy::random_gaussian_family(3);
  for (auto [a, b, n] : {std::tuple{1.0, 1.0, 2}, std::tuple{2.0, 1.0, 3}}) {
    const auto reps = hardy::positivity_scan(family, ExponentTriple::make(a, b, n));
    ASSERT_EQ(reps.size(), family.size());
    for (const auto& r : reps) {
      EXPECT_TRUE(r.passed) << a << " " << b << " " << n << " " << r.profile;
      EXPECT_GT(r.lhs.value, -r.lhs.error_estimate);
      EXPECT_GE(r.lhs.value, r.rhs.value - r.abs_tolerance);
      EXPECT_EQ(r.criterion, "one-sided");
    }
  }
  const auto spectral = hardy::positivity_scan({RadialProfile::gaussian()}, ExponentTriple::make(2.0, 1.0, 3));
  EXPECT_EQ(spectral[0].lhs.route, "spectral");
  EXPECT_THROW((void)hardy::positivity_scan(family, ExponentTriple::make(2.0, 2.0, 3)), hardy::DomainError);
}

TEST(Sharpness, QuotientsDecreaseTowardTheConstant) {
  const auto reps = hardy::sharpness_probe(ExponentTriple::make(1.0, 1.0, 3), {10.0, 100.0});
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_TRUE(reps[0].passed);
  EXPECT_TRUE(reps[1].passed);
  EXPECT_GT(reps[0].lhs.value, reps[1].lhs.value);
  EXPECT_GT(reps[1].lhs.value, 0.5);
}

TEST(Sharpness, EndpointQuotientIsPositive) {
  // b = n - a: the constant is 0 and every quotient is strictly positive.
  const auto reps = hardy::sharpness_probe(ExponentTriple::make(1.0, 1.0, 2), {10.0, 100.0});
  for (const auto& r : reps) {
    EXPECT_EQ(r.rhs.value, 0.0);
    EXPECT_GT(r.lhs.value, 0.0);
  }
  EXPECT_LT(reps[1].lhs.value, reps[0].lhs.value);
}

TEST(Suite, DefaultTriplesCoverNamedCases) {
  const auto ts = hardy::default_triples();
  auto has = [&](double a, double b, int n) {
    for (const auto& t : ts)
      if (t.a == a && t.b == b && t.n == n) return true;
    return false;
  };
  EXPECT_TRUE(has(2.0, 1.0, 3));
  EXPECT_TRUE(has(1.0, 1.0, 3));
  EXPECT_TRUE(has(1.0, 1.0, 2));
  for (const auto& t : ts) EXPECT_TRUE(t.theorem1_ok());
}

TEST(Suite, WorkerPoolPreservesOrder) {
  std::vector<hardy::CheckJob> jobs;
  for (int i = 1; i <= 8; ++i) {
    jobs.push_back({"monotonicity " + std::to_string(i),
                    [i] { return std::vector<VerificationReport>{hardy::monotonicity_scan(0.5, i + 1, {0.0, 0.5})}; }});
  }
  jobs.push_back({"bad", [] { return std::vector<VerificationReport>{hardy::kernel_positivity(1.0, 5.0, 3)}; }});
  const auto serial = hardy::run_jobs(jobs, 1);
  const auto parallel = hardy::run_jobs(jobs, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].label, parallel[i].label);
    EXPECT_EQ(serial[i].reports.size(), parallel[i].reports.size());
  }
  EXPECT_EQ(serial.back().status, hardy::JobStatus::skipped);
  const auto s = hardy::summarize(parallel);
  EXPECT_EQ(s.passed, 8);
  EXPECT_EQ(s.failed, 0);
  EXPECT_EQ(s.skipped, 1);
}

}  // namespace
