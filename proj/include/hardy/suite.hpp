#pragma once

// Batch execution: the default grids, a job list covering every check, and a
// worker pool that returns outcomes in submission order.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/verify.hpp"

namespace hardy {

inline const std::vector<double>& default_a_grid() {
  static const std::vector<double> g = {0.5, 1.0, 1.5, 2.0};
  return g;
}
inline const std::vector<double>& default_b_grid() {
  static const std::vector<double> g = {0.5, 1.0, 1.5, 2.0};
  return g;
}
inline const std::vector<int>& default_n_grid() {
  static const std::vector<int> g = {1, 2, 3, 4, 5};
  return g;
}

/// Triples (a, b, n) from the default grids with a + b <= n, ordered by n, then a, then b.
inline std::vector<ExponentTriple> default_triples() {
  std::vector<ExponentTriple> out;
  for (int n : default_n_grid()) {
    for (double a : default_a_grid()) {
      for (double b : default_b_grid()) {
        const auto t = ExponentTriple::make(a, b, n);
        if (t.theorem1_ok()) out.push_back(t);
      }
    }
  }
  return out;
}

/// Status of one job: it ran, it was outside its domain, or the numerics gave up.
enum class JobStatus { ran, skipped, error };

struct CheckJob {
  std::string label;
  std::function<std::vector<VerificationReport>()> run;
};

struct JobOutcome {
  std::string label;
  JobStatus status = JobStatus::ran;
  std::string message;
  std::vector<VerificationReport> reports;
};

struct SuiteSummary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

inline SuiteSummary summarize(const std::vector<JobOutcome>& outcomes) {
  SuiteSummary s;
  for (const auto& o : outcomes) {
    if (o.status == JobStatus::skipped) {
      ++s.skipped;
    } else if (o.status == JobStatus::error) {
      ++s.failed;
    } else {
      for (const auto& r : o.reports) (r.passed ? s.passed : s.failed) += 1;
    }
  }
  return s;
}

inline JobOutcome run_job(const CheckJob& job) {
  JobOutcome o;
  o.label = job.label;
  try {
    o.reports = job.run();
  } catch (const DomainError& e) {
    o.status = JobStatus::skipped;
    o.message = e.what();
  } catch (const std::exception& e) {
    o.status = JobStatus::error;
    o.message = e.what();
  }
  return o;
}

/// Worker count from HARDYCHECK_WORKERS, else the hardware concurrency.
inline int worker_count_from_env() {
  if (const char* s = std::getenv("HARDYCHECK_WORKERS")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs the jobs on `workers` threads; outcome i belongs to job i.
inline std::vector<JobOutcome> run_jobs(const std::vector<CheckJob>& jobs, int workers) {
  std::vector<JobOutcome> out(jobs.size());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = run_job(jobs[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = run_job(jobs[i]);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

namespace detail {

inline std::vector<double> b_values(double a, int n) {
  std::vector<double> g;
  for (double b = 0.0; b <= n - a + 1e-12; b += 0.25) g.push_back(b);
  return g;
}

inline std::string triple_label(const char* what, const ExponentTriple& t) {
  std::ostringstream os;
  os << what << " a=" << t.a << " b=" << t.b << " n=" << t.n;
  return os.str();
}

template <class F>
CheckJob single(std::string label, F f) {
  return {std::move(label), [f] { return std::vector<VerificationReport>{f()}; }};
}

}  // namespace detail

/// Profiles used by the cross-route checks: the Gaussian and r^2 e^{-r^2/2}.
inline std::vector<RadialProfile> reference_profiles() {
  return {RadialProfile::gaussian(), RadialProfile::gaussian_poly({0.0, 0.0, 1.0})};
}

/// Every check at its default grid. The order is fixed, so serialised output is stable.
inline std::vector<CheckJob> default_suite(const QuadratureSpec& spec = {}, const Tolerances& tol = {}) {
  std::vector<CheckJob> jobs;
  const auto triples = default_triples();

  for (int n : default_n_grid()) {
    for (double a : default_a_grid()) {
      if (!(a < n)) continue;
      std::ostringstream os;
      os << "monotonicity a=" << a << " n=" << n;
      jobs.push_back(detail::single(os.str(), [a, n] { return monotonicity_scan(a, n, detail::b_values(a, n)); }));
    }
  }

  for (int n = 2; n <= 5; ++n) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0, 2.5}) {
      if (!(alpha < n)) continue;
      std::ostringstream os;
      os << "power-pairing alpha=" << alpha << " n=" << n;
      jobs.push_back(detail::single(os.str(), [alpha, n] { return fourier_power_pairing(alpha, n); }));
    }
  }

  for (const auto& t : triples) {
    if (t.b > t.n - t.a) continue;
    jobs.push_back(detail::single(detail::triple_label("kernel-positivity", t),
                                  [t] { return kernel_positivity(t.a, t.b, t.n); }));
  }

  const auto refs = reference_profiles();
  for (const auto& psi : refs) {
    for (int n : {1, 2, 3}) {
      for (double a : {0.5, 1.0, 1.5}) {
        std::ostringstream os;
        os << "fractional a=" << a << " n=" << n << " " << psi.describe();
        jobs.push_back(detail::single(os.str(), [=] { return check_fractional_consistency(psi, a, n, spec, tol); }));
      }
    }
  }

  for (const auto& psi : refs) {
    for (int n : {1, 2, 3}) {
      for (double a : {0.5, 1.0, 1.5}) {
        if (!(a < n)) continue;
        std::ostringstream os;
        os << "hardy-gsr a=" << a << " n=" << n << " " << psi.describe();
        jobs.push_back(detail::single(os.str(), [=] { return check_hardy_gsr(psi, a, n, spec, tol); }));
      }
    }
  }
  {
    const auto near = RadialProfile::power_cutoff(1.0, 100.0);
    jobs.push_back(detail::single("hardy-gsr a=1 n=3 " + near.describe(),
                                  [=] { return check_hardy_gsr(near, 1.0, 3, spec, tol); }));
  }

  for (const auto& psi : refs) {
    for (const auto& t : triples) {
      if (!t.theorem2_ok() || t.a > 2.0) continue;
      jobs.push_back(detail::single(detail::triple_label("li-identity", t) + " " + psi.describe(),
                                    [=] { return check_li_identity(psi, t, spec, tol); }));
    }
  }

  for (auto [b, n] : {std::pair{1.0, 3}, std::pair{1.0, 4}, std::pair{2.0, 4}, std::pair{1.0, 5}, std::pair{2.0, 5},
                      std::pair{3.0, 5}}) {
    std::ostringstream os;
    os << "a2-identity b=" << b << " n=" << n;
    jobs.push_back(
        detail::single(os.str(), [=] { return check_a2_identity(RadialProfile::gaussian(), b, n, spec, tol); }));
  }

  const auto family = random_gaussian_family();
  for (const auto& t : triples) {
    jobs.push_back({detail::triple_label("positivity", t), [=] { return positivity_scan(family, t, spec, tol); }});
  }

  jobs.push_back({"sharpness a=1 b=1 n=3",
                  [=] { return sharpness_probe(ExponentTriple::make(1.0, 1.0, 3), {10.0, 100.0, 1000.0}, spec); }});
  return jobs;
}

}  // namespace hardy
