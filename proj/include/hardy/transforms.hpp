#pragma once

// Radial Fourier transforms on R^n in the unitary convention
//   F psi(xi) = (2 pi)^{-n/2} int e^{-i xi.x} psi(x) dx,
// which for radial psi reads F psi(rho) = int_0^inf psi(r) radial_kernel(n, r rho) r^{n-1} dr.
// Spectral-side forms are computed from the transform of GaussianPoly profiles.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/bessel.hpp"
#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specialfn.hpp"
#include "hardy/testfuncs.hpp"
#include "hardy/types.hpp"

namespace hardy {

/// A radial function sampled on increasing positive nodes, interpolated by
/// four-point Lagrange cubics in ln(rho).
struct SampledProfile {
  std::vector<double> nodes;
  std::vector<double> values;
  int n = 1;

  [[nodiscard]] double operator()(double rho) const {
    if (nodes.size() < 4) throw DomainError("SampledProfile: need at least four nodes");
    if (rho < nodes.front() || rho > nodes.back()) throw DomainError("SampledProfile: rho outside the sampled range");
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), rho);
    auto i = static_cast<std::ptrdiff_t>(it - nodes.begin()) - 2;
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(nodes.size()) - 4);
    const double x = std::log(rho);
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
      double l = 1.0;
      const double xj = std::log(nodes[i + j]);
      for (int m = 0; m < 4; ++m) {
        if (m != j) l *= (x - std::log(nodes[i + m])) / (xj - std::log(nodes[i + m]));
      }
      acc += l * values[i + j];
    }
    return acc;
  }

  void to_csv(std::ostream& os) const {
    os << "node,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < nodes.size(); ++i) os << nodes[i] << ',' << values[i] << '\n';
  }
};

namespace detail {

inline bool is_integer(double x) { return x == std::floor(x); }

// Number of dyadic panels toward 0 for an integrand ~ x^{p}, p > -1; none when p is an integer.
inline int dyadic_levels_for(double p, int override_levels) {
  if (override_levels > 0) return override_levels;
  if (is_integer(p)) return 0;
  return std::clamp(static_cast<int>(std::ceil(53.0 / (p + 1.0))), 1, 200);
}

// Panel boundaries: dyadic toward 0 on [0, h], then uniform of width at most h up to top.
inline std::vector<double> radial_panels(int levels, double h, double top) {
  std::vector<double> br{0.0};
  const double first = std::min(h, top);
  for (int k = levels; k >= 1; --k) br.push_back(std::ldexp(first, -k));
  br.push_back(first);
  if (top > first) {
    const int np = std::max(1, static_cast<int>(std::ceil((top - first) / h - 1e-9)));
    for (int p = 1; p <= np; ++p) br.push_back(p == np ? top : first + p * (top - first) / np);
  }
  return br;
}

inline void require_gaussian_poly(const RadialProfile& psi, const char* who) {
  if (!psi.is_gaussian_poly()) {
    std::ostringstream os;
    os << who << ": the spectral route supports GaussianPoly profiles only";
    throw DomainError(os.str());
  }
}

}  // namespace detail

/// F(r^w psi)(rho) for a GaussianPoly psi, by composite Gauss-Legendre quadrature
/// of the Bessel-kernel integral. Panels are dyadic near r = 0 when r^w is not
/// smooth and no wider than spec.oscillation / rho further out.
inline double hankel_value(const RadialProfile& psi, double w, int n, double rho, const SpectralSpec& spec = {}) {
  detail::require_gaussian_poly(psi, "hankel_value");
  if (n < 1) throw DomainError("hankel_value: dimension must be positive");
  if (!(rho >= 0.0)) throw DomainError("hankel_value: rho must be non-negative");
  const auto& g = psi.as_gaussian_poly();
  if (g.degree() < 0) return 0.0;
  const double p0 = g.lowest_power() + w + n - 1.0;
  if (!(p0 > -1.0)) throw DivergenceError("hankel_value: r^w psi is not integrable at the origin");
  const int levels = detail::dyadic_levels_for(w, spec.dyadic_levels);
  const double top = g.effective_radius() + std::max(0.0, w);
  const double h = rho > 0.0 ? std::min(spec.r_step, spec.oscillation / rho) : spec.r_step;
  const auto br = detail::radial_panels(levels, h, top);
  const GaussRule& rule = gauss_legendre(spec.order);
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    for_each_node(rule, br[i], br[i + 1], [&](double r, double wt) {
      const double f = g.poly(r) * std::exp(-0.5 * r * r) * std::pow(r, w + n - 1.0);
      sum += wt * f * radial_kernel(n, r * rho);
    });
  }
  return sum.value();
}

/// psi-hat sampled at the given nodes.
inline SampledProfile hankel_transform(const RadialProfile& psi, int n, const std::vector<double>& rho_nodes,
                                       const SpectralSpec& spec = {}) {
  for (std::size_t i = 0; i < rho_nodes.size(); ++i) {
    if (!(rho_nodes[i] > 0.0) || (i > 0 && !(rho_nodes[i] > rho_nodes[i - 1]))) {
      throw DomainError("hankel_transform: nodes must be positive and strictly increasing");
    }
  }
  SampledProfile out;
  out.n = n;
  out.nodes = rho_nodes;
  out.values.reserve(rho_nodes.size());
  for (double rho : rho_nodes) out.values.push_back(hankel_value(psi, 0.0, n, rho, spec));
  return out;
}

/// psi-hat on `count` log-spaced nodes of [rho_lo, rho_hi].
inline SampledProfile hankel_transform(const RadialProfile& psi, int n, double rho_lo = 1e-2, double rho_hi = 1e2,
                                       int count = 201, const SpectralSpec& spec = {}) {
  if (!(rho_lo > 0.0 && rho_hi > rho_lo) || count < 4) throw DomainError("hankel_transform: bad grid");
  std::vector<double> nodes(count);
  const double step = std::log(rho_hi / rho_lo) / (count - 1);
  for (int i = 0; i < count; ++i) nodes[i] = rho_lo * std::exp(step * i);
  nodes.back() = rho_hi;
  return hankel_transform(psi, n, nodes, spec);
}

/// Exact transform of an even GaussianPoly: r^{2k} e^{-r^2/2} maps to
/// 2^k Gamma(n/2+k)/Gamma(n/2) e^{-rho^2/2} sum_m (-k)_m / ((n/2)_m m!) (rho^2/2)^m.
inline RadialProfile fourier_even_gaussian_poly(const RadialProfile& psi, int n) {
  detail::require_gaussian_poly(psi, "fourier_even_gaussian_poly");
  const auto& g = psi.as_gaussian_poly();
  if (!g.is_even()) throw DomainError("fourier_even_gaussian_poly: odd powers have no polynomial transform");
  const double h = 0.5 * n;
  std::vector<double> out(std::max<std::size_t>(g.coeffs.size(), 1), 0.0);
  for (std::size_t j = 0; j < g.coeffs.size(); j += 2) {
    if (g.coeffs[j] == 0.0) continue;
    const int k = static_cast<int>(j / 2);
    double pref = std::ldexp(1.0, k);
    for (int i = 0; i < k; ++i) pref *= h + i;  // Gamma(h + k) / Gamma(h)
    double term = pref;  // m = 0
    for (int m = 0; m <= k; ++m) {
      out[2 * m] += g.coeffs[j] * term;
      // (-k)_{m+1} / ((h)_{m+1} (m+1)!) * 2^{-(m+1)} relative to the m-th term
      term *= (m - k) / ((h + m) * (m + 1.0)) * 0.5;
    }
  }
  return RadialProfile::gaussian_poly(std::move(out));
}

namespace detail {

struct PowerSeries {
  std::vector<double> coeff;     // A_j
  std::vector<double> exponent;  // F(r^w psi)(rho) ~ sum_j A_j rho^{-exponent_j}
};

// Large-rho expansion of F(r^w psi) from the Taylor series of psi at 0:
// each term d_j r^{j+w} contributes d_j K_n(j+w) rho^{-n-j-w}.
inline PowerSeries large_rho_series(const GaussianPoly& g, double w, int n, int terms = 48) {
  PowerSeries s;
  const auto d = taylor_coefficients(g, terms);
  for (int j = 0; j <= terms; ++j) {
    if (d[j] == 0.0) continue;
    const double beta = j + w;
    const double k = fourier_power_coefficient(beta, n);
    if (k == 0.0) continue;
    s.coeff.push_back(d[j] * k);
    s.exponent.push_back(n + beta);
  }
  return s;
}

// S_{n-1} int_{rho_max}^inf rho^{a+n-1} f(rho) g(rho) drho for two power series.
inline double series_tail(const PowerSeries& f, const PowerSeries& g, double a, int n, double rho_max) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < f.coeff.size(); ++i) {
    for (std::size_t j = 0; j < g.coeff.size(); ++j) {
      const double decay = f.exponent[i] + g.exponent[j] - a - n;
      if (!(decay > 0.0)) throw DivergenceError("spectral tail does not converge at large rho");
      sum += f.coeff[i] * g.coeff[j] * std::pow(rho_max, -decay) / decay;
    }
  }
  return sphere_area(n - 1) * sum.value();
}

// S_{n-1} int_0^inf rho^{a+n-1} F(psi)(rho) F(r^w psi)(rho) drho at one resolution.
inline double spectral_pairing_once(const RadialProfile& psi, double w, double a, int n, const SpectralSpec& spec) {
  const auto& g = psi.as_gaussian_poly();
  const int levels = dyadic_levels_for(a + n - 1.0, spec.dyadic_levels);
  const auto br = radial_panels(levels, spec.rho_step, spec.rho_max);
  const GaussRule& rule = gauss_legendre(spec.order);
  CompensatedSum sum;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    for_each_node(rule, br[i], br[i + 1], [&](double rho, double wt) {
      const double f0 = hankel_value(psi, 0.0, n, rho, spec);
      const double fw = (w == 0.0) ? f0 : hankel_value(psi, w, n, rho, spec);
      sum += wt * std::pow(rho, a + n - 1.0) * f0 * fw;
    });
  }
  const double body = sphere_area(n - 1) * sum.value();
  const auto s0 = large_rho_series(g, 0.0, n);
  const auto sw = (w == 0.0) ? s0 : large_rho_series(g, w, n);
  return body + series_tail(s0, sw, a, n, spec.rho_max);
}

inline FormResult spectral_pairing(const RadialProfile& psi, double w, double a, int n, const SpectralSpec& spec,
                                   const char* who) {
  require_gaussian_poly(psi, who);
  if (!(a >= 0.0)) throw DomainError(std::string(who) + ": need a >= 0");
  if (n < 1) throw DomainError(std::string(who) + ": dimension must be positive");
  FormResult res;
  res.route = "spectral";
  if (psi.is_zero()) return res;
  const double coarse = spectral_pairing_once(psi, w, a, n, spec);
  const double fine = spectral_pairing_once(psi, w, a, n, spec.refined());
  res.value = fine;
  res.error_estimate = std::abs(fine - coarse);
  const double top = psi.as_gaussian_poly().effective_radius();
  if (w > top) res.notes.push_back("r^b psi decays slowly relative to the radial grid");
  return res;
}

}  // namespace detail

/// (psi, |p|^a psi) = S_{n-1} int rho^{a+n-1} |psi-hat(rho)|^2 drho.
inline FormResult spectral_form(const RadialProfile& psi, double a, int n, const SpectralSpec& spec = {}) {
  return detail::spectral_pairing(psi, 0.0, a, n, spec, "spectral_form");
}

/// (psi, J_{a,b,n} psi) = Re int |xi|^a psi-hat conj(F(|x|^b psi)) dxi.
inline FormResult jordan_spectral_form(const RadialProfile& psi, const ExponentTriple& t, const SpectralSpec& spec = {}) {
  return detail::spectral_pairing(psi, t.b, t.a, t.n, spec, "jordan_spectral_form");
}

/// Raw-exponent variant that admits a = 0 or b = 0.
inline FormResult jordan_spectral_form(const RadialProfile& psi, double a, double b, int n,
                                       const SpectralSpec& spec = {}) {
  if (!(b >= 0.0)) throw DomainError("jordan_spectral_form: need b >= 0");
  return detail::spectral_pairing(psi, b, a, n, spec, "jordan_spectral_form");
}

/// int_{R^n} |x|^s e^{-|x|^2/2} dx = S_{n-1} 2^{(n+s)/2 - 1} Gamma((n+s)/2).
inline double gaussian_moment(double s, int n) {
  if (!(n + s > 0.0)) throw DivergenceError("gaussian_moment: not integrable at the origin");
  return sphere_area(n - 1) * std::pow(2.0, 0.5 * (n + s) - 1.0) * gamma(0.5 * (n + s));
}

/// Checks B_alpha F(|x|^{-alpha}) = B_{n-alpha} |xi|^{alpha-n} by pairing with the
/// self-dual Gaussian: int |x|^{-alpha} g = (B_{n-alpha}/B_alpha) int |xi|^{alpha-n} g-hat.
inline VerificationReport fourier_power_pairing(double alpha, int n) {
  VerificationReport rep;
  rep.check_name = "power-pairing";
  rep.a = alpha;
  rep.n = n;
  rep.profile = "gaussian_poly[1]";
  rep.lhs.route = "closed-form";
  rep.rhs.route = "closed-form";
  rep.lhs.value = gaussian_moment(-alpha, n);
  rep.rhs.value = b_const(n - alpha, n) / b_const(alpha, n) * gaussian_moment(alpha - n, n);
  compare_two_sided(rep, 1e-12, 0.0);
  return rep;
}

}  // namespace hardy
