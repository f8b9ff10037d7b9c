#pragma once

// Gauss rules and small building blocks for composite quadrature.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/specialfn.hpp"

namespace hardy {

/// Nodes and weights of an interpolatory rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Neumaier-compensated running sum. Order of add() calls fixes the result bit for bit.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

inline GaussRule compute_gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = order * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / dp;
      if (std::abs(z - z1) <= 1e-16) {
        // one more pass for the derivative at the converged node
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 1; j <= order; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        dp = order * (z * p1 - p2) / (z * z - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace detail

/// Gauss-Legendre rule of the given order on [-1, 1]; cached per order.
inline const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 512) throw DomainError("gauss_legendre: order must lie in [1, 512]");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, detail::compute_gauss_legendre(order)).first;
  return it->second;
}

/// Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta on [-1, 1], alpha, beta > -1.
/// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
inline GaussRule gauss_jacobi(int order, double alpha, double beta) {
  if (order < 1) throw DomainError("gauss_jacobi: order must be positive");
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi: need alpha, beta > -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(order > 1 ? order - 1 : 1);
  for (int k = 0; k < order; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (beta - alpha) / (ab + 2.0);
    } else {
      diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    if (k + 1 < order) {
      const double j = k + 1.0;
      const double t = 2.0 * j + ab;
      // j = 1 with the (j + ab) / (t - 1) factor cancelled, needed when ab = -1.
      const double b2 = (k == 0) ? 4.0 * (1.0 + alpha) * (1.0 + beta) / (t * t * (t + 1.0))
                                 : 4.0 * j * (j + alpha) * (j + beta) * (j + ab) /
                                       (t * t * (t + 1.0) * (t - 1.0));
      sub(k) = std::sqrt(b2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (order == 1) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = diag(0);
    solver.compute(m);
  } else {
    solver.computeFromTridiagonal(diag, sub.head(order - 1), Eigen::ComputeEigenvectors);
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) *
                     rgamma(ab + 2.0);
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int k = 0; k < order; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

/// Applies a rule on [-1,1] to the interval [lo, hi], invoking fn(x, w) per node.
template <class Fn>
void for_each_node(const GaussRule& rule, double lo, double hi, Fn&& fn) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.size(); ++i) fn(mid + half * rule.nodes[i], half * rule.weights[i]);
}

/// Composite Gauss-Legendre integral of fn over [lo, hi] split into `panels` pieces.
template <class Fn>
double integrate_gl(Fn&& fn, double lo, double hi, int panels, int order) {
  const GaussRule& rule = gauss_legendre(order);
  CompensatedSum sum;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double b = (p + 1 == panels) ? hi : a + h;
    for_each_node(rule, a, b, [&](double x, double w) { sum += w * fn(x); });
  }
  return sum.value();
}

/// Breakpoints 0 < x0 q^K < ... < x0 q < x0 of a geometric grading toward 0 with ratio q.
inline std::vector<double> geometric_breaks(double x0, double ratio, int levels) {
  std::vector<double> br;
  br.reserve(levels + 2);
  br.push_back(0.0);
  for (int k = levels; k >= 0; --k) br.push_back(x0 * std::pow(ratio, k));
  return br;
}

}  // namespace hardy
