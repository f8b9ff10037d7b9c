#pragma once

// Bessel functions of the orders that occur in radial Fourier transforms on R^n:
// J_{n/2-1}, i.e. integer orders for even n and half-integer orders for odd n.

#include <cmath>
#include <numbers>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {

namespace detail {

// J_nu(x) / x^nu by its power series; accurate for x up to ~8.
inline double bessel_j_over_power_series(int nu, double x) {
  const double q = -0.25 * x * x;
  double fact = 1.0;
  for (int k = 2; k <= nu; ++k) fact *= k;
  double term = 1.0 / (std::pow(2.0, nu) * fact);
  double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / (m * static_cast<double>(m + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller backward recurrence normalised by J_0 + 2 sum J_{2k} = 1.
inline double bessel_j_miller(int nu, double x) {
  const double tox = 2.0 / x;
  int top = static_cast<int>(x + 12.0 * std::cbrt(x) + 30.0) + nu;
  top += top % 2;
  double bjp = 0.0;
  double bj = 1.0;
  double sum = 0.0;
  double ans = 0.0;
  bool even = false;
  for (int j = top; j > 0; --j) {
    const double bjm = j * tox * bj - bjp;
    bjp = bj;
    bj = bjm;
    if (std::abs(bj) > 1e250) {
      bj *= 1e-250;
      bjp *= 1e-250;
      ans *= 1e-250;
      sum *= 1e-250;
    }
    if (even) sum += bj;
    even = !even;
    if (j == nu) ans = bjp;
  }
  // after the loop bj holds J_0 (unnormalised) and sum holds J_0 + J_2 + J_4 + ...
  const double norm = 2.0 * sum - bj;
  if (nu == 0) return bj / norm;
  return ans / norm;
}

// Hankel asymptotic expansion, for x large compared to nu^2.
inline double bessel_j_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double contrib = (k / 2) % 2 == 0 ? term : -term;
    if (k % 2 == 0) {
      p += contrib;
    } else {
      q += contrib;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double phase = (0.5 * nu + 0.25) * std::numbers::pi;
  const double c = std::cos(x) * std::cos(phase) + std::sin(x) * std::sin(phase);
  const double s = std::sin(x) * std::cos(phase) - std::cos(x) * std::sin(phase);
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * c - q * s);
}

// j_k(x) / x^k for the spherical Bessel function j_k, k >= -1 (j_{-1} = cos x / x).
inline double spherical_j_over_power(int k, double x) {
  if (k == -1) return std::cos(x);
  const double ax = std::abs(x);
  if (ax < 0.5 + k) {
    // sum_m (-x^2/2)^m / (m! (2k+2m+1)!!)
    double dfact = 1.0;
    for (int j = 3; j <= 2 * k + 1; j += 2) dfact *= j;
    double term = 1.0 / dfact;
    double sum = term;
    const double q = -0.5 * x * x;
    for (int m = 1; m < 100; ++m) {
      term *= q / (m * (2.0 * k + 2.0 * m + 1.0));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  double jm = std::cos(x) / x;  // j_{-1}
  double j = std::sin(x) / x;   // j_0
  for (int l = 0; l < k; ++l) {
    const double jp = (2.0 * l + 1.0) / x * j - jm;
    jm = j;
    j = jp;
  }
  return j / std::pow(x, k);
}

}  // namespace detail

/// J_nu(x) for integer nu >= 0 and x >= 0.
inline double bessel_j(int nu, double x) {
  if (nu < 0) throw DomainError("bessel_j: negative integer order");
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x < 8.0) return detail::bessel_j_over_power_series(nu, x) * std::pow(x, nu);
  if (x < 40.0 + nu * nu) return detail::bessel_j_miller(nu, x);
  return detail::bessel_j_asymptotic(nu, x);
}

/// Kernel of the radial Fourier transform on R^n: J_{n/2-1}(x) / x^{n/2-1}.
/// Then F psi(rho) = int_0^inf psi(r) radial_kernel(n, r rho) r^{n-1} dr.
inline double radial_kernel(int n, double x) {
  if (n < 1) throw DomainError("radial_kernel: dimension must be positive");
  x = std::abs(x);
  if (n % 2 == 1) {
    return std::sqrt(2.0 / std::numbers::pi) * detail::spherical_j_over_power((n - 3) / 2, x);
  }
  const int nu = n / 2 - 1;
  if (x < 8.0) return detail::bessel_j_over_power_series(nu, x);
  if (x < 40.0 + nu * nu) return detail::bessel_j_miller(nu, x) / std::pow(x, nu);
  return detail::bessel_j_asymptotic(nu, x) / std::pow(x, nu);
}

}  // namespace hardy
