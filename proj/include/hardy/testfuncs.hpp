#pragma once

// Closed-form radial test functions psi(|x|) on R^n.
//
//   GaussianPoly:  psi(r) = p(r) exp(-r^2/2),  p(r) = sum_j c_j r^j
//   PowerCutoff:   psi(r) = r^{-gamma} eta(ln r / ln R)
//
// eta is 1 on [-1, 1], 0 outside [-2, 2], and on 1 <= |t| <= 2 it is 1 - S(|t| - 1)
// with the quintic smoothstep S(x) = 10x^3 - 15x^4 + 6x^5, so eta is C^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specialfn.hpp"

namespace hardy {

/// The fixed C^2 cutoff shape.
struct CutoffShape {
  static double smoothstep(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
  static double smoothstep_deriv(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
  /// S(x) - S(y), factored through d = x - y when the two are close.
  static double smoothstep_difference(double x, double y) { return smoothstep_difference(x, y, x - y); }
  static double smoothstep_difference(double x, double y, double d) {
    if (std::abs(d) > 0.25) return smoothstep(x) - smoothstep(y);
    const double s2 = x * x + x * y + y * y;
    const double s3 = (x + y) * (x * x + y * y);
    const double s4 = x * x * x * x + x * x * x * y + x * x * y * y + x * y * y * y + y * y * y * y;
    return d * (10.0 * s2 - 15.0 * s3 + 6.0 * s4);
  }

  static double eta(double t) {
    const double at = std::abs(t);
    if (at <= 1.0) return 1.0;
    if (at >= 2.0) return 0.0;
    return 1.0 - smoothstep(at - 1.0);
  }
  static double eta_deriv(double t) {
    const double at = std::abs(t);
    if (at <= 1.0 || at >= 2.0) return 0.0;
    const double d = -smoothstep_deriv(at - 1.0);
    return t > 0 ? d : -d;
  }
};

struct GaussianPoly {
  std::vector<double> coeffs{1.0};

  [[nodiscard]] double poly(double r) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
    return acc;
  }
  [[nodiscard]] double poly_deriv(double r) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * r + k * coeffs[k];
    return acc;
  }
  [[nodiscard]] int degree() const {
    for (std::size_t k = coeffs.size(); k-- > 0;)
      if (coeffs[k] != 0.0) return static_cast<int>(k);
    return -1;
  }
  /// Index of the first non-zero coefficient, or -1 for the zero polynomial.
  [[nodiscard]] int lowest_power() const {
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (coeffs[k] != 0.0) return static_cast<int>(k);
    return -1;
  }
  /// True when only even powers occur, i.e. psi is smooth as a function of x.
  [[nodiscard]] bool is_even() const {
    for (std::size_t k = 1; k < coeffs.size(); k += 2)
      if (coeffs[k] != 0.0) return false;
    return true;
  }
  /// Radius beyond which psi is below ~1e-30 of its scale.
  [[nodiscard]] double effective_radius() const { return 13.0 + 0.5 * std::max(degree(), 0); }
};

struct PowerCutoff {
  double gamma_exp = 1.0;
  double cutoff_scale = 10.0;

  [[nodiscard]] double log_scale() const { return std::log(cutoff_scale); }
};

/// A radial test function from one of the two closed-form families.
class RadialProfile {
 public:
  using Family = std::variant<GaussianPoly, PowerCutoff>;

  RadialProfile() = default;
  RadialProfile(GaussianPoly g) : family_(std::move(g)) {}  // NOLINT(google-explicit-constructor)
  RadialProfile(PowerCutoff p) : family_(p) {              // NOLINT(google-explicit-constructor)
    if (!(p.cutoff_scale > 1.0) || !std::isfinite(p.gamma_exp)) {
      throw DomainError("PowerCutoff: need cutoff_scale > 1 and finite gamma_exp");
    }
  }

  static RadialProfile gaussian() { return GaussianPoly{{1.0}}; }
  static RadialProfile gaussian_poly(std::vector<double> coeffs) {
    return GaussianPoly{std::move(coeffs)};
  }
  static RadialProfile power_cutoff(double gamma_exp, double cutoff_scale) {
    return PowerCutoff{gamma_exp, cutoff_scale};
  }

  [[nodiscard]] const Family& family() const { return family_; }
  [[nodiscard]] bool is_gaussian_poly() const { return std::holds_alternative<GaussianPoly>(family_); }
  [[nodiscard]] const GaussianPoly& as_gaussian_poly() const {
    if (!is_gaussian_poly()) throw DomainError("profile is not a GaussianPoly");
    return std::get<GaussianPoly>(family_);
  }
  [[nodiscard]] const PowerCutoff& as_power_cutoff() const {
    if (is_gaussian_poly()) throw DomainError("profile is not a PowerCutoff");
    return std::get<PowerCutoff>(family_);
  }

  /// psi(r).
  [[nodiscard]] double operator()(double r) const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) return g->poly(r) * std::exp(-0.5 * r * r);
    if (r <= 0.0) return 0.0;
    return at_log(std::log(r));
  }

  /// psi(e^u); for PowerCutoff this avoids forming r.
  [[nodiscard]] double at_log(double u) const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) {
      const double r = std::exp(u);
      return g->poly(r) * std::exp(-0.5 * r * r);
    }
    const auto& p = std::get<PowerCutoff>(family_);
    const double t = u / p.log_scale();
    if (std::abs(t) >= 2.0) return 0.0;
    return std::exp(-p.gamma_exp * u) * CutoffShape::eta(t);
  }

  /// psi(e^u) - psi(e^{u+w}) without cancellation for small w.
  [[nodiscard]] double log_difference(double u, double w) const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) {
      if (std::abs(w) > 0.5) return at_log(u) - at_log(u + w);
      const double r = std::exp(u);
      const double s = r * std::exp(w);
      const double er = std::exp(-0.5 * r * r);
      // p(r) - p(s) = (r - s) sum_k c_k sum_{i+j=k-1} r^i s^j, evaluated by Horner in both
      double dd = 0.0;  // divided difference (p(r) - p(s)) / (r - s)
      double hr = 0.0;
      for (std::size_t k = g->coeffs.size(); k-- > 1;) {
        hr = hr * r + g->coeffs[k];  // Horner partial of p at r, shifted
        dd = dd * s + hr;
      }
      const double r_minus_s = -r * std::expm1(w);
      const double ps = g->poly(s);
      const double gauss_diff = -er * std::expm1(-0.5 * r * r * std::expm1(2.0 * w));  // e_r - e_s
      return r_minus_s * dd * er + ps * gauss_diff;
    }
    const auto& p = std::get<PowerCutoff>(family_);
    const double ls = p.log_scale();
    const double t1 = u / ls;
    const double t2 = (u + w) / ls;
    const double eta1 = CutoffShape::eta(t1);
    const double eta2 = CutoffShape::eta(t2);
    const double e1 = std::exp(-p.gamma_exp * u);
    double eta_diff = eta1 - eta2;
    const double a1 = std::abs(t1);
    const double a2 = std::abs(t2);
    if (a1 > 1.0 && a1 < 2.0 && a2 > 1.0 && a2 < 2.0 && (t1 > 0) == (t2 > 0)) {
      // a1 - a2 formed from w directly; the rounded t1 and t2 would lose a tiny step
      const double d = t1 > 0 ? -w / ls : w / ls;
      eta_diff = -CutoffShape::smoothstep_difference(a1 - 1.0, a2 - 1.0, d);
    }
    return e1 * eta_diff - eta2 * e1 * std::expm1(-p.gamma_exp * w);
  }

  /// psi'(r).
  [[nodiscard]] double derivative(double r) const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) {
      return (g->poly_deriv(r) - r * g->poly(r)) * std::exp(-0.5 * r * r);
    }
    const auto& p = std::get<PowerCutoff>(family_);
    if (r <= 0.0) return 0.0;
    const double u = std::log(r);
    const double ls = p.log_scale();
    const double t = u / ls;
    if (std::abs(t) >= 2.0) return 0.0;
    return std::exp(-(p.gamma_exp + 1.0) * u) *
           (-p.gamma_exp * CutoffShape::eta(t) + CutoffShape::eta_deriv(t) / ls);
  }

  /// Log-radius interval outside of which psi vanishes (or is negligible).
  /// The lower end is -inf for profiles that do not vanish near the origin.
  [[nodiscard]] std::pair<double, double> log_support() const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) {
      return {-std::numeric_limits<double>::infinity(), std::log(g->effective_radius())};
    }
    const double l = std::get<PowerCutoff>(family_).log_scale();
    return {-2.0 * l, 2.0 * l};
  }

  /// Log-radius window containing all structure of psi; outside it psi is a
  /// pure power law or zero. Quadratures resolve this window fully before
  /// they start testing for decay.
  [[nodiscard]] std::pair<double, double> log_core() const {
    if (is_gaussian_poly()) return {std::log(1e-3), log_support().second};
    return log_support();
  }

  /// Breakpoints (in log-radius) where psi loses smoothness.
  [[nodiscard]] std::vector<double> log_breakpoints() const {
    if (is_gaussian_poly()) return {};
    const double l = std::get<PowerCutoff>(family_).log_scale();
    return {-2.0 * l, -l, l, 2.0 * l};
  }

  /// Exponent k with psi(r) ~ c r^k as r -> 0 (+inf when psi vanishes near 0).
  [[nodiscard]] double small_r_power() const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) {
      const int k = g->lowest_power();
      return k < 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(k);
    }
    return std::numeric_limits<double>::infinity();
  }

  [[nodiscard]] bool is_zero() const {
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) return g->degree() < 0;
    return false;
  }

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    if (const auto* g = std::get_if<GaussianPoly>(&family_)) {
      os << "gaussian_poly[";
      for (std::size_t k = 0; k < g->coeffs.size(); ++k) os << (k ? "," : "") << g->coeffs[k];
      os << "]";
    } else {
      const auto& p = std::get<PowerCutoff>(family_);
      os << "power_cutoff[gamma=" << p.gamma_exp << ",R=" << p.cutoff_scale << "]";
    }
    return os.str();
  }

 private:
  Family family_{GaussianPoly{}};
};

/// Settings of the one-dimensional log-radius quadrature.
struct RadialQuadrature {
  double step = 0.25;    // maximal panel width in u = ln r
  int order = 16;        // Gauss-Legendre points per panel
  double u_floor = -400; // give up (ConvergenceError) below this
};

/// int_{-inf}^{u_hi} g(u) du for g that is structured on [u_core, u_hi] (split at the
/// given breakpoints) and decays toward -inf. Panels below u_core are added until
/// three in a row are negligible.
template <class G>
double integrate_log_line(G&& g, double u_core, double u_hi, const std::vector<double>& breaks,
                          const RadialQuadrature& q = {}) {
  const GaussRule& rule = gauss_legendre(q.order);
  std::vector<double> pts{u_core};
  for (double b : breaks)
    if (b > u_core && b < u_hi) pts.push_back(b);
  pts.push_back(u_hi);
  std::sort(pts.begin(), pts.end());
  CompensatedSum sum;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = pts[i + 1] - pts[i];
    if (len <= 0) continue;
    const int np = std::max(1, static_cast<int>(std::ceil(len / q.step - 1e-9)));
    const double h = len / np;
    for (int p = 0; p < np; ++p) {
      for_each_node(rule, pts[i] + p * h, pts[i] + (p + 1) * h, [&](double u, double w) {
        const double v = w * g(u);
        sum += v;
        abs_sum += std::abs(v);
      });
    }
  }
  int quiet = 0;
  double hi = u_core;
  while (quiet < 3) {
    const double lo = hi - q.step;
    if (lo < q.u_floor) {
      throw ConvergenceError("integrate_log_line: integrand does not decay toward r -> 0");
    }
    CompensatedSum panel;
    for_each_node(rule, lo, hi, [&](double u, double w) { panel += w * g(u); });
    const double pv = panel.value();
    sum += pv;
    abs_sum += std::abs(pv);
    quiet = (std::abs(pv) <= 1e-18 * abs_sum) ? quiet + 1 : 0;
    hi = lo;
  }
  return sum.value();
}

/// Integral of f(|x|) over R^n given g(u) = f(e^u) e^{n u}: S_{n-1} int g(u) du.
template <class G>
double integrate_radial(G&& g, const RadialProfile& shape, int n, const RadialQuadrature& q = {}) {
  const auto [core_lo, core_hi] = shape.log_core();
  return sphere_area(n - 1) *
         integrate_log_line(std::forward<G>(g), core_lo, core_hi, shape.log_breakpoints(), q);
}

/// int_{R^n} |psi(x)|^2 |x|^s dx.
inline double weighted_norm(const RadialProfile& psi, double s, int n, const RadialQuadrature& q = {}) {
  if (n < 1) throw DomainError("weighted_norm: dimension must be positive");
  if (psi.is_zero()) return 0.0;
  const double lead = 2.0 * psi.small_r_power() + s + n;
  if (!(lead > 0.0)) {
    std::ostringstream os;
    os << "weighted_norm: |psi|^2 |x|^" << s << " is not integrable at the origin in R^" << n;
    throw DivergenceError(os.str());
  }
  return integrate_radial(
      [&](double u) {
        const double v = psi.at_log(u);
        return v == 0.0 ? 0.0 : v * v * std::exp((s + n) * u);
      },
      psi, n, q);
}

/// int_{R^n} psi(x) chi(x) |x|^s dx for two radial profiles (chi's support must lie in psi's window).
inline double inner_product(const RadialProfile& psi, const RadialProfile& chi, int n, double s = 0.0,
                            const RadialQuadrature& q = {}) {
  const double lead = psi.small_r_power() + chi.small_r_power() + s + n;
  if (!(lead > 0.0)) throw DivergenceError("inner_product: integrand not integrable at the origin");
  return integrate_radial(
      [&](double u) {
        const double v = psi.at_log(u);
        return v == 0.0 ? 0.0 : v * chi.at_log(u) * std::exp((s + n) * u);
      },
      psi, n, q);
}

/// int_{R^n} |grad phi|^2 dx for phi(r) = r^{c} psi(r), which equals (phi, -Delta phi)
/// whenever the boundary term at the origin vanishes.
inline double dirichlet_form(const RadialProfile& psi, double c, int n, const RadialQuadrature& q = {}) {
  // phi' = r^{c-1} (c psi + r psi'); for GaussianPoly the bracket is q(r) e^{-r^2/2}
  // with q_k = (c + k) c_k - c_{k-2}.
  double bracket_power = std::numeric_limits<double>::infinity();
  if (psi.is_gaussian_poly()) {
    const auto& cf = psi.as_gaussian_poly().coeffs;
    const int top = static_cast<int>(cf.size()) + 2;
    for (int k = 0; k < top; ++k) {
      const double ck = k < static_cast<int>(cf.size()) ? cf[k] : 0.0;
      const double ck2 = (k >= 2 && k - 2 < static_cast<int>(cf.size())) ? cf[k - 2] : 0.0;
      if ((c + k) * ck - ck2 != 0.0) {
        bracket_power = k;
        break;
      }
    }
  }
  const double lead = 2.0 * (bracket_power + c - 1.0) + n;
  if (!(lead > 0.0)) throw DivergenceError("dirichlet_form: gradient not square integrable at 0");
  return integrate_radial(
      [&](double u) {
        const double r = std::exp(u);
        const double d = c * psi.at_log(u) / r + psi.derivative(r);
        // |phi'|^2 r^n with phi' = r^c (c psi / r + psi')
        return d * d * std::exp((2.0 * c + n) * u);
      },
      psi, n, q);
}

/// -Delta psi for psi = p(r) e^{-r^2/2}, again of GaussianPoly form.
inline RadialProfile radial_laplacian(const RadialProfile& psi, int n) {
  if (!psi.is_gaussian_poly()) throw DomainError("radial_laplacian: only GaussianPoly profiles are supported");
  if (n < 1) throw DomainError("radial_laplacian: dimension must be positive");
  const auto& c = psi.as_gaussian_poly().coeffs;
  auto coef = [&](int k) { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : 0.0; };
  if (n > 1 && coef(1) != 0.0) {
    throw DomainError("radial_laplacian: a linear term r e^{-r^2/2} has a 1/r Laplacian in n > 1");
  }
  const int deg = static_cast<int>(c.size()) - 1;
  std::vector<double> out(std::max(deg + 3, 1), 0.0);
  for (int k = 0; k <= deg + 2; ++k) {
    out[k] = -(k + 2.0) * (k + n) * coef(k + 2) + (2.0 * k + n) * coef(k) - coef(k - 2);
  }
  return RadialProfile::gaussian_poly(std::move(out));
}

/// Taylor coefficients d_0..d_order of p(r) e^{-r^2/2} at r = 0.
inline std::vector<double> taylor_coefficients(const GaussianPoly& g, int order) {
  std::vector<double> e(order + 1, 0.0);
  double term = 1.0;
  for (int m = 0; 2 * m <= order; ++m) {
    e[2 * m] = term;
    term *= -0.5 / (m + 1.0);
  }
  std::vector<double> d(order + 1, 0.0);
  for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
    for (int k = 0; k + static_cast<int>(j) <= order; ++k) d[j + k] += g.coeffs[j] * e[k];
  }
  return d;
}

}  // namespace hardy
