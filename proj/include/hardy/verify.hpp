#pragma once

// Named checks. Each one evaluates a claim by two independent routes (or a
// route against a closed form) and records the verdict in a VerificationReport.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/quadforms.hpp"
#include "hardy/specialfn.hpp"
#include "hardy/testfuncs.hpp"
#include "hardy/transforms.hpp"
#include "hardy/types.hpp"

namespace hardy {

/// Tolerances used by the checks.
struct Tolerances {
  double single_route = 1e-3;  // one route against a closed form or a second route
  double identity = 1e-2;      // identities that subtract large terms
  double abs_scale = 1e-6;     // absolute fallback, relative to the largest term
  double roundoff = 1e-12;     // floor for one-sided comparisons whose error estimates vanish
};

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline VerificationReport make_report(std::string name, double a, double b, int n, const RadialProfile* psi,
                                      const QuadratureSpec& spec) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.a = a;
  r.b = b;
  r.n = n;
  if (psi != nullptr) r.profile = psi->describe();
  r.spec = spec;
  return r;
}

inline FormResult scalar(double v, std::string route, double err = 0.0) {
  FormResult r;
  r.value = v;
  r.error_estimate = err;
  r.route = std::move(route);
  return r;
}

}  // namespace detail

/// (psi, |p|^a psi): spectral route against the singular double integral.
inline VerificationReport check_fractional_consistency(const RadialProfile& psi, double a, int n,
                                                       const QuadratureSpec& spec = {},
                                                       const Tolerances& tol = {}) {
  detail::Stopwatch clock;
  auto rep = detail::make_report("fractional", a, 0.0, n, &psi, spec);
  if (!(a > 0.0 && a < 2.0)) throw DomainError("check fractional: need 0 < a < 2");
  rep.lhs = spectral_form(psi, a, n);
  rep.rhs = fractional_form(psi, a, n, spec);
  compare_two_sided(rep, tol.single_route,
                    tol.abs_scale * std::max(std::abs(rep.lhs.value), std::abs(rep.rhs.value)));
  rep.runtime_ms = clock.ms();
  return rep;
}

/// (psi, H_{a,n} psi): |p|^a form minus C_{a,n} int |psi|^2 |x|^{-a}, against the
/// ground-state representation. The |p|^a form is spectral for GaussianPoly and the
/// double integral for PowerCutoff.
inline VerificationReport check_hardy_gsr(const RadialProfile& psi, double a, int n, const QuadratureSpec& spec = {},
                                          const Tolerances& tol = {}) {
  detail::Stopwatch clock;
  auto rep = detail::make_report("hardy-gsr", a, 0.0, n, &psi, spec);
  if (!(a > 0.0 && a < std::min(2.0, static_cast<double>(n)))) {
    throw DomainError("check hardy-gsr: need 0 < a < min(2, n)");
  }
  const FormResult kinetic = psi.is_gaussian_poly() ? spectral_form(psi, a, n) : fractional_form(psi, a, n, spec);
  const double c = hardy_const(a, n);
  const double pot = weighted_norm(psi, -a, n);
  rep.lhs = kinetic;
  rep.lhs.value = kinetic.value - c * pot;
  rep.lhs.route = kinetic.route + "-minus-potential";
  rep.rhs = hardy_gsr_form(psi, a, n, spec);
  const double scale = std::max(std::abs(kinetic.value), c * std::abs(pot));
  rep.extras = {{"kinetic", kinetic.value}, {"hardy_const", c}, {"potential", pot}};
  if (std::abs(rep.lhs.value) < 1e-3 * scale) rep.notes.push_back("severe cancellation: difference below 1e-3 of the terms");
  compare_two_sided(rep, tol.identity, tol.abs_scale * scale);
  rep.runtime_ms = clock.ms();
  return rep;
}

/// Ground-state identity for J_{a,b,n}:
///   (psi, J psi) - L_{a,b,n} int |psi|^2 |x|^{b-a}  =  weighted Hardy term + remainder.
/// For a = 2 the remainder vanishes and both sides come from the spectral and local routes.
inline VerificationReport check_li_identity(const RadialProfile& psi, const ExponentTriple& t,
                                            const QuadratureSpec& spec = {}, const Tolerances& tol = {}) {
  detail::Stopwatch clock;
  auto rep = detail::make_report("li-identity", t.a, t.b, t.n, &psi, spec);
  if (!t.theorem2_ok()) throw DomainError("check li-identity: need a + b <= n and 0 < min(a, b) < 2");
  if (t.a > 2.0) throw DomainError("check li-identity: a > 2 is not supported");
  const double l = li_const(t.a, t.b, t.n);
  const double wn = weighted_norm(psi, t.b - t.a, t.n);
  FormResult jordan;
  if (t.a < 2.0) {
    jordan = jordan_form(psi, t, spec);
    const auto parts = weighted_hardy_and_remainder(psi, t.a, t.b, t.n, spec);
    rep.rhs = detail::add(parts[0], parts[1]);
    rep.extras = {{"weighted_hardy", parts[0].value}, {"remainder", parts[1].value}};
  } else {
    jordan = jordan_spectral_form(psi, t);
    rep.rhs = weighted_hardy_term(psi, t, spec);
    rep.extras = {{"weighted_hardy", rep.rhs.value}, {"remainder", 0.0}};
  }
  rep.lhs = jordan;
  rep.lhs.value = jordan.value - l * wn;
  rep.extras.insert(rep.extras.begin(), {{"jordan", jordan.value}, {"li_const", l}, {"weighted_norm", wn}});
  const double scale = std::max(std::abs(jordan.value), std::abs(l * wn));
  compare_two_sided(rep, tol.identity, tol.abs_scale * scale);
  rep.runtime_ms = clock.ms();
  return rep;
}

/// a = 2: (psi, J_{2,b,n} psi) in Fourier space against the local form
/// int |grad phi|^2 - (b^2/4) int |phi|^2 |x|^{-2}, phi = r^{b/2} psi. Also checks the margin
/// over the Hardy bound, (psi, J psi) - (phi, H_{2,n} phi) = L_{2,b,n} int |phi|^2 |x|^{-2}.
inline VerificationReport check_a2_identity(const RadialProfile& psi, double b, int n, const QuadratureSpec& spec = {},
                                            const Tolerances& tol = {}) {
  detail::Stopwatch clock;
  auto rep = detail::make_report("a2-identity", 2.0, b, n, &psi, spec);
  if (!(b > 0.0) || b > n - 2.0) throw DomainError("check a2-identity: need 0 < b <= n - 2");
  if (!psi.is_gaussian_poly()) throw DomainError("check a2-identity: GaussianPoly profiles only");
  rep.lhs = jordan_spectral_form(psi, 2.0, b, n);
  const double grad = dirichlet_form(psi, 0.5 * b, n);
  const double inv_sq = weighted_norm(psi, b - 2.0, n);  // int |phi|^2 |x|^{-2}
  rep.rhs = detail::scalar(grad - 0.25 * b * b * inv_sq, "local", 1e-9 * (grad + 0.25 * b * b * inv_sq));
  const double scale = std::max(std::abs(rep.lhs.value), std::abs(grad));
  compare_two_sided(rep, tol.single_route, tol.abs_scale * scale);

  const double hardy_local = grad - hardy_const(2.0, n) * inv_sq;
  const double margin = rep.lhs.value - hardy_local;
  const double predicted = li_const(2.0, b, n) * inv_sq;
  const bool bound_ok = margin >= -tol.identity * std::abs(rep.lhs.value);
  const bool margin_ok = std::abs(margin - predicted) <= tol.identity * std::abs(rep.lhs.value);
  rep.extras = {{"dirichlet", grad},          {"inverse_square", inv_sq},  {"hardy_local", hardy_local},
                {"hardy_margin", margin},     {"predicted_margin", predicted}};
  if (!bound_ok) rep.notes.push_back("Hardy bound violated beyond tolerance");
  if (!margin_ok) rep.notes.push_back("margin over the Hardy bound differs from L_{2,b,n} int |phi|^2 |x|^{-2}");
  rep.passed = rep.passed && bound_ok && margin_ok;
  rep.runtime_ms = clock.ms();
  return rep;
}

/// Ten (by default) GaussianPoly profiles of degree 3 with coefficients uniform in [-2, 2].
inline std::vector<RadialProfile> random_gaussian_family(int count = 10, unsigned long long seed = 20240607ULL,
                                                         int degree = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::vector<RadialProfile> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> c(degree + 1);
    for (double& x : c) x = coef(rng);
    out.push_back(RadialProfile::gaussian_poly(std::move(c)));
  }
  return out;
}

/// (psi, J psi) > -error for every profile and, when min(a, b) < 2 and a <= 2,
/// (psi, J psi) >= weighted Hardy term - combined errors.
inline std::vector<VerificationReport> positivity_scan(const std::vector<RadialProfile>& family,
                                                       const ExponentTriple& t, const QuadratureSpec& spec = {},
                                                       const Tolerances& tol = {}) {
  if (!t.theorem1_ok()) throw DomainError("positivity scan: need n >= a + b and min(a, b) <= 2");
  std::vector<VerificationReport> out;
  out.reserve(family.size());
  for (const auto& psi : family) {
    detail::Stopwatch clock;
    auto rep = detail::make_report("positivity", t.a, t.b, t.n, &psi, spec);
    rep.criterion = "one-sided";
    const bool with_bound = std::min(t.a, t.b) < 2.0 && t.a <= 2.0;
    const bool exchangeable = t.a > 2.0 && t.b < 2.0 && psi.is_gaussian_poly() && psi.as_gaussian_poly().is_even();
    if (t.a < 2.0 || exchangeable) {
      rep.lhs = jordan_form(psi, t, spec);
    } else {
      rep.lhs = jordan_spectral_form(psi, t);
    }
    const double j = rep.lhs.value;
    const bool positive = j > -rep.lhs.error_estimate;
    bool bound = true;
    if (with_bound) {
      rep.rhs = weighted_hardy_term(psi, t, spec);
      const double slack = rep.lhs.error_estimate + rep.rhs.error_estimate +
                           tol.roundoff * (std::abs(j) + std::abs(rep.rhs.value));
      bound = j >= rep.rhs.value - slack;
      rep.abs_tolerance = slack;
      if (!bound) rep.notes.push_back("(psi, J psi) below the weighted Hardy term");
    } else {
      rep.rhs = detail::scalar(0.0, "none");
      rep.notes.push_back("weighted Hardy bound not evaluated for this triple");
    }
    if (!positive) rep.notes.push_back("(psi, J psi) negative beyond its error estimate");
    rep.abs_discrepancy = j - rep.rhs.value;
    rep.rel_discrepancy = std::abs(j) > 0.0 ? rep.abs_discrepancy / std::abs(j) : 0.0;
    rep.tolerance = 0.0;
    rep.passed = positive && bound && std::isfinite(j);
    rep.notes.push_back("strict positivity is tested as a margin against error estimates");
    rep.runtime_ms = clock.ms();
    out.push_back(std::move(rep));
  }
  return out;
}

/// f(y) = y^p + y^{-p} - y^q - y^{-q} with p = (n-a)/2, q = b/2, evaluated as
/// 4 sinh((p+q) ln y / 2) sinh((p-q) ln y / 2).
inline double kernel_numerator(double y, double a, double b, int n) {
  const double p = 0.5 * (n - a);
  const double q = 0.5 * b;
  const double l = std::log(y);
  return 4.0 * std::sinh(0.5 * (p + q) * l) * std::sinh(0.5 * (p - q) * l);
}

/// Log-spaced grid of `count` points on [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    g[i] = count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return g;
}

/// f >= 0 on the grid, with f = 0 only at y = 1 or when b = n - a.
inline VerificationReport kernel_positivity(double a, double b, int n, const std::vector<double>& grid) {
  detail::Stopwatch clock;
  auto rep = detail::make_report("kernel-positivity", a, b, n, nullptr, QuadratureSpec{});
  if (!(b > 0.0) || !(n - a >= b)) throw DomainError("kernel positivity: need n - a >= b > 0");
  const bool degenerate = (b == n - a);
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (double y : grid) {
    if (!(y > 0.0)) throw DomainError("kernel positivity: grid points must be positive");
    const double f = kernel_numerator(y, a, b, n);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
    if (!(f >= 0.0)) ok = false;
    if (f == 0.0 && y != 1.0 && !degenerate) ok = false;
    if (degenerate && f != 0.0) ok = false;
  }
  rep.lhs = detail::scalar(fmin, "closed-form");
  rep.rhs = detail::scalar(0.0, "bound");
  rep.extras = {{"min", fmin}, {"max", fmax}, {"points", static_cast<double>(grid.size())}};
  rep.criterion = "one-sided";
  rep.abs_discrepancy = fmin;
  rep.passed = ok;
  rep.runtime_ms = clock.ms();
  return rep;
}

inline VerificationReport kernel_positivity(double a, double b, int n) {
  return kernel_positivity(a, b, n, log_grid(1e-3, 1e3, 1000));
}

/// Rayleigh quotients Q(R) = (psi_R, J psi_R) / int |psi_R|^2 |x|^{b-a} for
/// psi_R = r^{-g} eta(ln r / ln R), g = (n+b-a)/2. One report per R.
inline std::vector<VerificationReport> sharpness_probe(const ExponentTriple& t, const std::vector<double>& r_list,
                                                       const QuadratureSpec& spec = {}) {
  if (!t.theorem2_ok()) throw DomainError("sharpness probe: need a + b <= n and 0 < min(a, b) < 2");
  if (!(t.a < 2.0)) throw DomainError("sharpness probe: the integral route needs a < 2");
  const double l = li_const(t.a, t.b, t.n);
  const double scale = std::max(l, hardy_const(t.a, t.n));
  std::vector<VerificationReport> out;
  double prev_q = std::numeric_limits<double>::infinity();
  double prev_err = 0.0;
  for (double r : r_list) {
    detail::Stopwatch clock;
    const auto psi = RadialProfile::power_cutoff(t.gsr_exponent(), r);
    auto rep = detail::make_report("sharpness", t.a, t.b, t.n, &psi, spec);
    rep.criterion = "one-sided";
    const FormResult j = jordan_form(psi, t, spec);
    const double wn = weighted_norm(psi, t.b - t.a, t.n);
    const double q = j.value / wn;
    const double q_err = j.error_estimate / wn + 1e-9 * std::abs(q);
    rep.lhs = detail::scalar(q, "ratio", q_err);
    rep.rhs = detail::scalar(l, "closed-form");
    rep.abs_discrepancy = q - l;
    rep.rel_discrepancy = l > 0.0 ? (q - l) / l : q - l;
    const bool strict = q - l > q_err;
    const bool monotone = q <= prev_q + q_err + prev_err;
    bool close = true;
    if (r >= 1000.0) {
      rep.tolerance = 0.1 * scale;
      close = q - l <= rep.tolerance;
    }
    rep.extras = {{"R", r}, {"jordan", j.value}, {"weighted_norm", wn}, {"li_const", l}};
    if (!strict) rep.notes.push_back("Q(R) not above L beyond its error estimate");
    if (!monotone) rep.notes.push_back("Q(R) increased with R");
    if (!close) rep.notes.push_back("Q(R) - L above 0.1 of the constant scale at R >= 1000");
    rep.passed = strict && monotone && close;
    rep.runtime_ms = clock.ms();
    prev_q = q;
    prev_err = q_err;
    out.push_back(std::move(rep));
  }
  return out;
}

/// L_{a,b,n} strictly decreasing along the grid and zero at b = n - a.
inline VerificationReport monotonicity_scan(double a, int n, const std::vector<double>& b_grid) {
  detail::Stopwatch clock;
  auto rep = detail::make_report("monotonicity", a, 0.0, n, nullptr, QuadratureSpec{});
  if (!(a > 0.0 && a < n)) throw DomainError("monotonicity scan: need 0 < a < n");
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (b_grid[i] < 0.0 || b_grid[i] > n - a || (i > 0 && !(b_grid[i] > b_grid[i - 1]))) {
      throw DomainError("monotonicity scan: grid must be increasing inside [0, n - a]");
    }
  }
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double b : b_grid) {
    const double v = li_const(a, b, n);
    rep.extras.emplace_back("L(b=" + [&] {
      std::ostringstream os;
      os << b;
      return os.str();
    }() + ")", v);
    if (!(v < prev)) decreasing = false;
    prev = v;
  }
  const double endpoint = li_const(a, n - a, n);
  rep.lhs = detail::scalar(b_grid.empty() ? 0.0 : li_const(a, b_grid.back(), n), "closed-form");
  rep.rhs = detail::scalar(endpoint, "closed-form");
  rep.criterion = "one-sided";
  rep.passed = (b_grid.size() <= 1 || decreasing) && endpoint == 0.0;
  if (!decreasing) rep.notes.push_back("L_{a,b,n} not strictly decreasing on the grid");
  rep.runtime_ms = clock.ms();
  return rep;
}

}  // namespace hardy
