#pragma once

// Settings and result records shared by the integral route, the spectral
// route and the verification layer.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/specialfn.hpp"

namespace hardy {

/// Resolution of the log-radius double integrals (u = ln|x|, v = ln|y|, w = v - u).
struct QuadratureSpec {
  double u_min = -120.0;        // hard floor for the outer log-radius integration
  double u_max = 40.0;          // hard ceiling; the profile support usually ends earlier
  int panels_per_unit = 2;      // uniform panels per unit of u and of w away from the diagonal
  int gl_order = 12;            // Gauss-Legendre points per panel
  double diagonal_grading = 0.5;  // ratio of the geometric panels in w toward w = 0
  int diagonal_levels = 0;      // number of graded panels; 0 picks ceil(44 / (2 - a))
  int graded_subdivision = 1;   // each graded panel is split this many times
  double near_width = 1.0;      // w below this is treated by graded panels
  int refinement_factor = 2;    // resolution multiplier used for the error estimate

  [[nodiscard]] int levels_for(double a) const {
    if (diagonal_levels > 0) return diagonal_levels;
    return std::min(400, static_cast<int>(std::ceil(44.0 / std::max(2.0 - a, 0.05))));
  }

  [[nodiscard]] QuadratureSpec refined() const {
    QuadratureSpec s = *this;
    s.panels_per_unit *= refinement_factor;
    s.graded_subdivision *= refinement_factor;
    return s;
  }

  void validate() const {
    if (!(u_min < u_max)) throw DomainError("QuadratureSpec: need u_min < u_max");
    if (gl_order < 4) throw DomainError("QuadratureSpec: gl_order must be at least 4");
    if (!(diagonal_grading > 0.0 && diagonal_grading < 1.0))
      throw DomainError("QuadratureSpec: diagonal_grading must lie in (0, 1)");
    if (panels_per_unit < 1 || graded_subdivision < 1 || refinement_factor < 2)
      throw DomainError("QuadratureSpec: panel counts must be positive, refinement_factor >= 2");
    if (!(near_width > 0.0)) throw DomainError("QuadratureSpec: near_width must be positive");
  }

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// Resolution of the Hankel-transform (spectral) route.
struct SpectralSpec {
  double rho_max = 12.0;      // quadrature in rho up to here; asymptotic series beyond
  double rho_step = 0.5;      // panel width in rho; dyadic panels below the first one
  double r_step = 0.5;        // panel width in r; dyadic panels below the first one
  double oscillation = std::numbers::pi;  // panel width in r is at most this / rho
  int dyadic_levels = 0;      // dyadic panels toward 0; 0 picks a value from the exponents
  int order = 16;
  int refinement_factor = 2;

  [[nodiscard]] SpectralSpec refined() const {
    SpectralSpec s = *this;
    s.rho_step /= refinement_factor;
    s.r_step /= refinement_factor;
    s.oscillation /= refinement_factor;
    return s;
  }

  friend bool operator==(const SpectralSpec&, const SpectralSpec&) = default;
};

/// A computed quadratic-form value with its a-posteriori error estimate
/// |value(N) - value(refinement_factor * N)|.
struct FormResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::string route;  // "integral", "spectral", "local", "closed-form", "ratio", ...
  QuadratureSpec spec_used{};
  std::vector<std::string> notes;
};

/// Outcome of a named check.
struct VerificationReport {
  std::string check_name;
  double a = 0.0;
  double b = 0.0;
  int n = 0;
  std::string profile;  // descriptor, empty when the check has no test function
  QuadratureSpec spec{};
  FormResult lhs;
  FormResult rhs;
  double abs_discrepancy = 0.0;
  double rel_discrepancy = 0.0;
  double tolerance = 0.0;
  double abs_tolerance = 0.0;
  std::string criterion = "relative";  // or "absolute", "one-sided", ...
  bool passed = false;
  long long runtime_ms = 0;
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, double>> extras;  // auxiliary named values
};

/// Two-sided comparison: relative tolerance, with an absolute fallback
/// abs_floor when both sides are near zero.
inline void compare_two_sided(VerificationReport& rep, double tolerance, double abs_floor) {
  const double l = rep.lhs.value;
  const double r = rep.rhs.value;
  rep.abs_discrepancy = std::abs(l - r);
  const double scale = std::max(std::abs(l), std::abs(r));
  rep.rel_discrepancy = scale > 0.0 ? rep.abs_discrepancy / scale : 0.0;
  rep.tolerance = tolerance;
  rep.abs_tolerance = abs_floor;
  if (rep.rel_discrepancy <= tolerance) {
    rep.criterion = "relative";
    rep.passed = true;
  } else if (rep.abs_discrepancy <= abs_floor) {
    rep.criterion = "absolute";
    rep.passed = true;
  } else {
    rep.criterion = "relative";
    rep.passed = false;
  }
  rep.passed = rep.passed && std::isfinite(l) && std::isfinite(r);
}

}  // namespace hardy
