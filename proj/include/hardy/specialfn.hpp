#pragma once

// Gamma function and the closed-form constants of the fractional Hardy and
// Jordan-product inequalities.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

namespace detail {

// sin(pi x) with exact argument reduction, so that sin_pi(k) == 0 for integers.
inline double sin_pi(double x) {
  double r = std::fmod(x, 2.0);  // exact
  if (r < 0) r += 2.0;
  if (r > 1.0) return -sin_pi(r - 1.0);
  if (r > 0.5) r = 1.0 - r;
  if (r == 0.0) return 0.0;
  return std::sin(std::numbers::pi * r);
}

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Lanczos approximation (g = 671/128, 14 terms), valid for x >= 0.5.
inline double gamma_lanczos(double x) {
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double ser = 0.999999999999997092;
  double y = x;
  for (double c : cof) ser += c / ++y;
  const double t = x + 5.24218750000000000;
  // t^(x+1/2) split in halves so that Gamma(170) does not overflow midway.
  const double half = std::pow(t, 0.5 * (x + 0.5));
  return (half * std::exp(-t)) * half * (2.5066282746310005 * ser / x);
}

}  // namespace detail

/// Gamma function on the real line. Uses the reflection identity below 1/2.
/// Throws PoleError at 0, -1, -2, ...
inline double gamma(double x) {
  if (std::isnan(x)) return x;
  if (detail::is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma: pole at x = " << x;
    throw PoleError(os.str());
  }
  if (x < 0.5) return std::numbers::pi / (detail::sin_pi(x) * detail::gamma_lanczos(1.0 - x));
  return detail::gamma_lanczos(x);
}

/// 1/Gamma(x); entire, so it returns exactly 0 at the poles of Gamma.
inline double rgamma(double x) {
  if (detail::is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return 0.0;
  if (x < 0.5) return detail::sin_pi(x) * detail::gamma_lanczos(1.0 - x) / std::numbers::pi;
  return 1.0 / detail::gamma_lanczos(x);
}

/// Surface measure of the unit sphere S^k in R^{k+1}; |S^0| = 2.
inline double sphere_area(int k) {
  if (k < 0) throw DomainError("sphere_area: negative sphere dimension");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / gamma(h);
}

/// B_alpha = 2^{alpha/2} Gamma(alpha/2), the normalisation in
/// B_alpha F(|x|^{-alpha}) = B_{n-alpha} |xi|^{alpha-n}.
inline double b_const(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < n)) {
    std::ostringstream os;
    os << "b_const: alpha = " << alpha << " outside (0, " << n << ")";
    throw DomainError(os.str());
  }
  return std::pow(2.0, 0.5 * alpha) * gamma(0.5 * alpha);
}

/// Coefficient K with F(|x|^beta)(xi) = K |xi|^{-n-beta} in the unitary
/// convention, continued analytically in beta. It vanishes when beta is an
/// even non-negative integer (|x|^beta is then a polynomial).
inline double fourier_power_coefficient(double beta, int n) {
  return std::pow(2.0, 0.5 * n + beta) * gamma(0.5 * (n + beta)) * rgamma(-0.5 * beta);
}

/// alpha_{a,n} = 2^{a-1} pi^{-n/2} Gamma((n+a)/2) / |Gamma(-a/2)|, the constant of
/// the singular-integral representation of (psi, |p|^a psi). Only 0 < a < 2.
inline double alpha_const(double a, int n) {
  if (!(a > 0.0 && a < 2.0) || n < 1) {
    std::ostringstream os;
    os << "alpha_const: a = " << a << " outside (0, 2)";
    throw DomainError(os.str());
  }
  return std::pow(2.0, a - 1.0) * std::pow(std::numbers::pi, -0.5 * n) * gamma(0.5 * (n + a)) *
         std::abs(rgamma(-0.5 * a));
}

/// Sharp constant C_{a,n} = 2^a [Gamma((n+a)/4) / Gamma((n-a)/4)]^2 in
/// |p|^a >= C_{a,n} |q|^{-a}.
inline double hardy_const(double a, int n) {
  if (!(a > 0.0 && a < n)) {
    std::ostringstream os;
    os << "hardy_const: a = " << a << " outside (0, " << n << ")";
    throw DomainError(os.str());
  }
  const double ratio = gamma(0.25 * (n + a)) * rgamma(0.25 * (n - a));
  return std::pow(2.0, a) * ratio * ratio;
}

/// L_{a,b,n} = 2^a Gamma((n-b+a)/4) Gamma((n+b+a)/4) / (Gamma((n+b-a)/4) Gamma((n-b-a)/4)).
/// Evaluated through 1/Gamma so that b = n - a gives exactly 0.
inline double li_const(double a, double b, int n) {
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * n;
  if (!(a > 0.0 && a < n && b >= 0.0 && b <= n - a + slack)) {
    std::ostringstream os;
    os << "li_const: need 0 < a < n and 0 <= b <= n - a, got a = " << a << ", b = " << b
       << ", n = " << n;
    throw DomainError(os.str());
  }
  double top_gap = n - b - a;
  if (std::abs(top_gap) <= slack) top_gap = 0.0;
  return std::pow(2.0, a) * gamma(0.25 * (n - b + a)) * gamma(0.25 * (n + b + a)) *
         rgamma(0.25 * (n + b - a)) * rgamma(0.25 * top_gap);
}

/// Parameters (a, b, n) of the Jordan product (|p|^a |q|^b + |q|^b |p|^a) / 2 on R^n.
struct ExponentTriple {
  double a = 1.0;
  double b = 1.0;
  int n = 3;

  /// Validated constructor: a > 0, b > 0, n >= 1.
  static ExponentTriple make(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0) || n < 1 || !std::isfinite(a) || !std::isfinite(b)) {
      std::ostringstream os;
      os << "invalid exponent triple (a, b, n) = (" << a << ", " << b << ", " << n
         << "): need a > 0, b > 0, n >= 1";
      throw DomainError(os.str());
    }
    return ExponentTriple{a, b, n};
  }

  /// n >= a + b and min(a, b) <= 2.
  [[nodiscard]] bool theorem1_ok() const { return n >= a + b && std::min(a, b) <= 2.0; }
  /// a + b <= n and 0 < min(a, b) < 2.
  [[nodiscard]] bool theorem2_ok() const {
    const double m = std::min(a, b);
    return a + b <= n && m > 0.0 && m < 2.0;
  }
  /// gamma = (n + b - a) / 2, the decay exponent of the optimising power.
  [[nodiscard]] double gsr_exponent() const { return 0.5 * (n + b - a); }

  friend bool operator==(const ExponentTriple&, const ExponentTriple&) = default;
};

}  // namespace hardy
