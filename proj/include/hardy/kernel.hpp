#pragma once

// Angular reduction of the singular kernel |x - y|^{-(n+a)}.
//
// For |x| = r, |y| = s and w = ln(s/r),
//   A(r, s) = int_{S^{n-1}} |r e - s omega|^{-(n+a)} d omega = (r s)^{-(n+a)/2} G(w),
//   G(w)    = 2^{-lambda} |S^{n-2}| int_{-1}^{1} (cosh w - t)^{-lambda} (1 - t^2)^{(n-3)/2} dt,
// with lambda = (n+a)/2. G is even, ~ w^{-1-a} at 0 and ~ e^{-lambda |w|} at infinity.

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specialfn.hpp"

namespace hardy {

/// Evaluates G(w) for fixed (a, n). Holds the Gauss-Jacobi rule, so build once and reuse.
class RadialKernel {
 public:
  RadialKernel(double a, int n, int far_order = 32, int near_order = 20)
      : a_(a), n_(n), lambda_(0.5 * (n + a)), mu_(0.5 * (n - 3)), near_order_(near_order) {
    if (n < 1) throw DomainError("RadialKernel: dimension must be positive");
    if (!(a > -static_cast<double>(n)) || !std::isfinite(a)) throw DomainError("RadialKernel: need n + a > 0");
    if (n >= 2) {
      jacobi_ = gauss_jacobi(far_order, mu_, mu_);
      sphere_ = sphere_area(n - 2);
    }
  }

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] double lambda() const { return lambda_; }

  /// G(w); throws at w = 0 where the kernel is singular.
  [[nodiscard]] double operator()(double w) const {
    w = std::abs(w);
    if (w == 0.0) throw DomainError("angular kernel is singular at r = s");
    if (lambda_ * w > 745.0 + 2.0 * lambda_) return 0.0;
    const double sh = std::sinh(0.5 * w);
    const double eps = 2.0 * sh * sh;  // cosh w - 1 without cancellation
    if (n_ == 1) return std::pow(2.0 * eps, -lambda_) + std::pow(2.0 * eps + 4.0, -lambda_);
    const double scale = std::pow(2.0, -lambda_) * sphere_;
    if (eps >= 0.5) return scale * far(w);
    return scale * near(eps);
  }

 private:
  // Gauss-Jacobi in t; (cosh w - t)^{-lambda} = e^{-lambda w} (cosh w e^{-w} - t e^{-w})^{-lambda}.
  [[nodiscard]] double far(double w) const {
    const double em = std::exp(-w);
    const double c = 0.5 * (1.0 + em * em);
    CompensatedSum sum;
    for (std::size_t i = 0; i < jacobi_.size(); ++i) {
      sum += jacobi_.weights[i] * std::pow(c - jacobi_.nodes[i] * em, -lambda_);
    }
    return std::exp(-lambda_ * w) * sum.value();
  }

  // t = 1 - tau^2 on [0, 1] with panels graded toward tau ~ sqrt(eps),
  // t = -1 + y^2 on [-1, 0].
  [[nodiscard]] double near(double eps) const {
    const GaussRule& rule = gauss_legendre(near_order_);
    const double pw = static_cast<double>(n_ - 2);
    CompensatedSum sum;
    auto upper = [&](double tau) {
      const double t2 = tau * tau;
      return 2.0 * std::pow(tau, pw) * std::pow(2.0 - t2, mu_) * std::pow(eps + t2, -lambda_);
    };
    auto lower = [&](double y) {
      const double y2 = y * y;
      return 2.0 * std::pow(y, pw) * std::pow(2.0 - y2, mu_) * std::pow(2.0 + eps - y2, -lambda_);
    };
    double lo = 0.0;
    double hi = 0.125 * std::sqrt(eps);
    while (true) {
      const double top = std::min(hi, 1.0);
      for_each_node(rule, lo, top, [&](double x, double wt) { sum += wt * upper(x); });
      if (top >= 1.0) break;
      lo = top;
      hi = 2.0 * top;
    }
    for_each_node(rule, 0.0, 1.0, [&](double y, double wt) { sum += wt * lower(y); });
    return sum.value();
  }

  double a_;
  int n_;
  double lambda_;
  double mu_;
  int near_order_;
  double sphere_ = 2.0;
  GaussRule jacobi_;
};

/// A(r, s) = int over the unit sphere of |r e - s omega|^{-(n+a)}.
inline double angular_kernel(double r, double s, double a, int n) {
  if (!(r > 0.0 && s > 0.0)) throw DomainError("angular_kernel: radii must be positive");
  if (r == s) throw DomainError("angular_kernel: singular at r = s");
  const RadialKernel g(a, n);
  return std::pow(r * s, -g.lambda()) * g(std::log(s / r));
}

}  // namespace hardy
