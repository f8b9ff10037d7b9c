#pragma once

// Singular double-integral forms reduced to two log-radius variables.
//
// With u = ln|x|, v = ln|y|, w = v - u and G the reduced angular kernel,
//   alpha_{a,n} int int F(x, y) |x - y|^{-(n+a)} dx dy
//     = alpha_{a,n} S_{n-1} * 2 int du int_{w > 0} P(u, u + w) G(w) dw
// for integrands symmetric in (x, y). The inner w-axis is a fixed lattice:
// graded panels on (0, near_width], uniform panels beyond. Past the support of
// psi the integrand factorises as X(u) k(w), and the w-integral is closed with a
// precomputed tail table of int k(w) G(w) dw.

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/kernel.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specialfn.hpp"
#include "hardy/testfuncs.hpp"
#include "hardy/transforms.hpp"
#include "hardy/types.hpp"

namespace hardy {

/// Weight k(w) multiplying X(u) once psi(e^{u+w}) = 0.
enum class TailWeight {
  exp_half,  // e^{(n-a) w / 2}
  one,       // 1
  sinh_sq,   // 2 sinh^2(b w / 4)
};

/// Quadrature nodes on the w half-line with cached kernel values.
class WLattice {
 public:
  WLattice(const RadialKernel& kernel, const QuadratureSpec& spec)
      : kernel_(kernel), order_(spec.gl_order), w0_(spec.near_width), h_(1.0 / spec.panels_per_unit) {
    const GaussRule& rule = gauss_legendre(order_);
    const auto br = geometric_breaks(spec.near_width, spec.diagonal_grading, spec.levels_for(kernel.a()));
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      const int sub = spec.graded_subdivision;
      const double step = (br[i + 1] - br[i]) / sub;
      for (int k = 0; k < sub; ++k) {
        const double lo = br[i] + k * step;
        const double hi = (k + 1 == sub) ? br[i + 1] : lo + step;
        for_each_node(rule, lo, hi, [&](double w, double wt) {
          near_w_.push_back(w);
          near_wt_.push_back(wt);
          near_g_.push_back(kernel_(w));
        });
      }
    }
  }

  [[nodiscard]] const std::vector<double>& near_nodes() const { return near_w_; }
  [[nodiscard]] const std::vector<double>& near_weights() const { return near_wt_; }
  [[nodiscard]] const std::vector<double>& near_kernel() const { return near_g_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] double origin() const { return w0_; }
  [[nodiscard]] double width() const { return h_; }

  /// Left end of far panel k.
  [[nodiscard]] double panel_start(int k) const { return w0_ + k * h_; }

  /// Makes far panels 0..count-1 available.
  void ensure(int count) {
    const GaussRule& rule = gauss_legendre(order_);
    while (panels_ < count) {
      const double lo = panel_start(panels_);
      for_each_node(rule, lo, lo + h_, [&](double w, double wt) {
        far_w_.push_back(w);
        far_wt_.push_back(wt);
        far_g_.push_back(kernel_(w));
      });
      ++panels_;
    }
  }
  [[nodiscard]] const double* far_nodes(int k) const { return far_w_.data() + static_cast<std::size_t>(k) * order_; }
  [[nodiscard]] const double* far_weights(int k) const { return far_wt_.data() + static_cast<std::size_t>(k) * order_; }
  [[nodiscard]] const double* far_kernel(int k) const { return far_g_.data() + static_cast<std::size_t>(k) * order_; }

  /// T_k = int_{panel_start(k)}^inf k(w) G(w) dw; zero beyond the returned table.
  const std::vector<double>& tail(TailWeight kind, double param) {
    const auto key = std::make_pair(static_cast<int>(kind), param);
    auto it = tails_.find(key);
    if (it != tails_.end()) return it->second;
    std::vector<double> pieces;
    double total = 0.0;
    int quiet = 0;
    for (int k = 0; quiet < 4; ++k) {
      if (panel_start(k) > 4000.0) {
        throw ConvergenceError("WLattice: kernel tail does not decay; is b < n + a?");
      }
      ensure(k + 1);
      CompensatedSum s;
      for (int i = 0; i < order_; ++i) {
        const double w = far_nodes(k)[i];
        s += far_weights(k)[i] * weight(kind, param, w) * far_kernel(k)[i];
      }
      pieces.push_back(s.value());
      total += std::abs(s.value());
      quiet = (std::abs(s.value()) <= 1e-19 * total) ? quiet + 1 : 0;
    }
    std::vector<double> table(pieces.size() + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = pieces.size(); k-- > 0;) {
      acc += pieces[k];
      table[k] = acc.value();
    }
    return tails_.emplace(key, std::move(table)).first->second;
  }

  static double weight(TailWeight kind, double param, double w) {
    switch (kind) {
      case TailWeight::exp_half:
        return std::exp(param * w);
      case TailWeight::one:
        return 1.0;
      case TailWeight::sinh_sq: {
        const double s = std::sinh(0.25 * param * w);
        return 2.0 * s * s;
      }
    }
    return 0.0;
  }

 private:
  const RadialKernel& kernel_;
  int order_;
  double w0_;
  double h_;
  int panels_ = 0;
  std::vector<double> near_w_, near_wt_, near_g_;
  std::vector<double> far_w_, far_wt_, far_g_;
  std::map<std::pair<int, double>, std::vector<double>> tails_;
};

namespace detail {

// Outer u-panel edges on [lo, hi], no wider than h, split at breakpoints; descending.
inline std::vector<double> descending_edges(double lo, double hi, double h, const std::vector<double>& breaks) {
  std::vector<double> pts{lo, hi};
  for (double b : breaks)
    if (b > lo && b < hi) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  std::vector<double> edges{pts.back()};
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    const double len = pts[i + 1] - pts[i];
    if (len <= 0.0) continue;
    const int np = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
    for (int p = np - 1; p >= 0; --p) edges.push_back(p == 0 ? pts[i] : pts[i] + p * len / np);
  }
  return edges;
}

}  // namespace detail

/// int du int_{w>0} P(u, u+w) G(w) dw for K integrands at once.
///
/// Form must provide
///   State at(double u) const;
///   std::array<double, K> pair(const State& su, const State& sv, double u, double w) const;
///   std::array<double, K> beyond(const State& su) const;   // X_k(u)
///   std::array<std::pair<TailWeight, double>, K> tails() const;
template <std::size_t K, class Form>
std::array<double, K> log_strip_integral(const RadialProfile& psi, WLattice& lat, const QuadratureSpec& spec,
                                         const Form& form) {
  spec.validate();
  const auto [supp_lo, supp_hi] = psi.log_support();
  const auto [core_lo, core_hi] = psi.log_core();
  if (supp_hi > spec.u_max) {
    std::ostringstream os;
    os << "quadrature budget exceeded: profile support reaches u = " << supp_hi << " > u_max = " << spec.u_max;
    throw ConvergenceError(os.str());
  }
  std::array<const std::vector<double>*, K> tables{};
  const auto kinds = form.tails();
  for (std::size_t k = 0; k < K; ++k) tables[k] = &lat.tail(kinds[k].first, kinds[k].second);

  const GaussRule& rule = gauss_legendre(spec.gl_order);
  const double h = 1.0 / spec.panels_per_unit;
  const auto& nw = lat.near_nodes();
  const auto& nwt = lat.near_weights();
  const auto& ng = lat.near_kernel();

  std::array<CompensatedSum, K> total;
  std::array<double, K> abs_total{};

  auto inner = [&](double u) {
    std::array<CompensatedSum, K> s;
    const auto su = form.at(u);
    const double w_skip = std::isfinite(supp_lo) && u < supp_lo ? supp_lo - u : 0.0;
    if (w_skip < lat.origin()) {
      for (std::size_t i = 0; i < nw.size(); ++i) {
        if (nw[i] < w_skip) continue;
        const auto p = form.pair(su, form.at(u + nw[i]), u, nw[i]);
        for (std::size_t k = 0; k < K; ++k) s[k] += nwt[i] * p[k] * ng[i];
      }
    }
    const double reach = supp_hi - u - lat.origin();
    const int kb = reach <= 0.0 ? 0 : static_cast<int>(std::ceil(reach / lat.width() - 1e-12));
    lat.ensure(kb);
    const int k0 = w_skip > lat.origin() ? static_cast<int>(std::floor((w_skip - lat.origin()) / lat.width())) : 0;
    for (int p = std::max(0, k0); p < kb; ++p) {
      const double* ws = lat.far_nodes(p);
      const double* wts = lat.far_weights(p);
      const double* gs = lat.far_kernel(p);
      for (int i = 0; i < lat.order(); ++i) {
        const auto v = form.pair(su, form.at(u + ws[i]), u, ws[i]);
        for (std::size_t k = 0; k < K; ++k) s[k] += wts[i] * v[k] * gs[i];
      }
    }
    const auto x = form.beyond(su);
    for (std::size_t k = 0; k < K; ++k) {
      const auto& t = *tables[k];
      if (x[k] != 0.0 && static_cast<std::size_t>(kb) < t.size()) s[k] += x[k] * t[kb];
    }
    std::array<double, K> out{};
    for (std::size_t k = 0; k < K; ++k) out[k] = s[k].value();
    return out;
  };

  auto run_panel = [&](double lo, double hi) {
    std::array<CompensatedSum, K> panel;
    for_each_node(rule, lo, hi, [&](double u, double wt) {
      const auto v = inner(u);
      for (std::size_t k = 0; k < K; ++k) panel[k] += wt * v[k];
    });
    std::array<double, K> out{};
    for (std::size_t k = 0; k < K; ++k) {
      out[k] = panel[k].value();
      total[k] += out[k];
      abs_total[k] += std::abs(out[k]);
    }
    return out;
  };

  const double top = supp_hi;
  const double bottom = std::isfinite(core_lo) ? std::min(core_lo, top) : top;
  const auto edges = detail::descending_edges(bottom, top, h, psi.log_breakpoints());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) run_panel(edges[i + 1], edges[i]);

  int quiet = 0;
  double hi = bottom;
  while (quiet < 3) {
    const double lo = hi - h;
    if (lo < spec.u_min) {
      std::ostringstream os;
      os << "log-radius integral not converged at u_min = " << spec.u_min
         << " (integrand does not decay toward r -> 0)";
      throw ConvergenceError(os.str());
    }
    const auto p = run_panel(lo, hi);
    bool small = true;
    for (std::size_t k = 0; k < K; ++k) small = small && std::abs(p[k]) <= 1e-16 * abs_total[k];
    quiet = small ? quiet + 1 : 0;
    hi = lo;
  }
  std::array<double, K> out{};
  for (std::size_t k = 0; k < K; ++k) out[k] = total[k].value();
  return out;
}

namespace detail {

struct PlainState {
  double psi;  // psi(e^u)
  double m;    // e^{(n-a) u / 2}
  double eb;   // e^{b u}
};

// Components: 0 = (psi_u - psi_v)^2, 1 = (psi_u - psi_v)(e^{bu} psi_u - e^{bv} psi_v),
// both times e^{(n-a)(u+v)/2}.
template <std::size_t K>
struct PlainForm {
  const RadialProfile* psi;
  double half_gap;  // (n - a) / 2
  double b;

  [[nodiscard]] PlainState at(double u) const {
    return {psi->at_log(u), std::exp(half_gap * u), b == 0.0 ? 1.0 : std::exp(b * u)};
  }
  [[nodiscard]] std::array<double, K> pair(const PlainState& x, const PlainState& y, double u, double w) const {
    const double d = psi->log_difference(u, w);
    const double mm = x.m * y.m;
    if constexpr (K == 1) {
      return {d * d * mm};
    } else {
      // e^{bu} psi_u - e^{bv} psi_v = e^{bu} (d - psi_v expm1(b w))
      const double weighted = x.eb * (d - y.psi * std::expm1(b * w));
      return {d * d * mm, d * weighted * mm};
    }
  }
  [[nodiscard]] std::array<double, K> beyond(const PlainState& x) const {
    const double base = x.psi * x.psi * x.m * x.m;
    if constexpr (K == 1) {
      return {base};
    } else {
      return {base, base * x.eb};
    }
  }
  [[nodiscard]] std::array<std::pair<TailWeight, double>, K> tails() const {
    if constexpr (K == 1) {
      return {std::pair{TailWeight::exp_half, half_gap}};
    } else {
      return {std::pair{TailWeight::exp_half, half_gap}, std::pair{TailWeight::exp_half, half_gap}};
    }
  }
};

struct GroundState {
  double psi;  // psi(e^u)
  double eg;   // e^{g u}
};

// Phi = psi(e^u) e^{g u}. Components: 0 = (Phi_u - Phi_v)^2, 1 = 2 sinh^2(b w / 4) (Phi_u - Phi_v)^2.
template <std::size_t K>
struct GroundStateForm {
  const RadialProfile* psi;
  double g;
  double b;

  [[nodiscard]] GroundState at(double u) const { return {psi->at_log(u), std::exp(g * u)}; }
  [[nodiscard]] std::array<double, K> pair(const GroundState& x, const GroundState& y, double u, double w) const {
    // Phi_u - Phi_v = e^{gu} (psi_u - psi_v - psi_v expm1(g w))
    const double diff = x.eg * (psi->log_difference(u, w) - y.psi * std::expm1(g * w));
    const double d = diff * diff;
    if constexpr (K == 1) {
      return {d};
    } else {
      return {d, d * WLattice::weight(TailWeight::sinh_sq, b, w)};
    }
  }
  [[nodiscard]] std::array<double, K> beyond(const GroundState& x) const {
    const double phi = x.psi * x.eg;
    if constexpr (K == 1) {
      return {phi * phi};
    } else {
      return {phi * phi, phi * phi};
    }
  }
  [[nodiscard]] std::array<std::pair<TailWeight, double>, K> tails() const {
    if constexpr (K == 1) {
      return {std::pair{TailWeight::one, 0.0}};
    } else {
      return {std::pair{TailWeight::one, 0.0}, std::pair{TailWeight::sinh_sq, b}};
    }
  }
};

inline void require_fractional_a(double a, int n, const char* who) {
  if (!(a > 0.0 && a < 2.0)) {
    std::ostringstream os;
    os << who << ": the integral route needs 0 < a < 2, got a = " << a;
    throw DomainError(os.str());
  }
  if (n < 1) throw DomainError(std::string(who) + ": dimension must be positive");
}

// Runs the K-component integral at spec and at spec.refined(); scales by alpha S_{n-1} * 2.
template <std::size_t K, class Form>
std::array<FormResult, K> two_resolution(const RadialProfile& psi, double a, int n, const QuadratureSpec& spec,
                                         const Form& form) {
  const RadialKernel kernel(a, n);
  const double scale = 2.0 * alpha_const(a, n) * sphere_area(n - 1);
  WLattice lat_coarse(kernel, spec);
  const auto coarse = log_strip_integral<K>(psi, lat_coarse, spec, form);
  const QuadratureSpec fine_spec = spec.refined();
  WLattice lat_fine(kernel, fine_spec);
  const auto fine = log_strip_integral<K>(psi, lat_fine, fine_spec, form);
  std::array<FormResult, K> out;
  for (std::size_t k = 0; k < K; ++k) {
    out[k].value = scale * fine[k];
    out[k].error_estimate = scale * std::abs(fine[k] - coarse[k]);
    out[k].route = "integral";
    out[k].spec_used = spec;
    if (!std::isfinite(out[k].value) || !std::isfinite(out[k].error_estimate)) {
      throw ConvergenceError("integral route produced a non-finite value");
    }
  }
  return out;
}

inline FormResult add(const FormResult& x, const FormResult& y, double cy = 1.0) {
  FormResult r = x;
  r.value = x.value + cy * y.value;
  r.error_estimate = x.error_estimate + std::abs(cy) * y.error_estimate;
  if (x.route != y.route) r.route = x.route + "+" + y.route;
  r.notes.insert(r.notes.end(), y.notes.begin(), y.notes.end());
  return r;
}

}  // namespace detail

/// (psi, |p|^a psi) = alpha_{a,n} int int |psi(x) - psi(y)|^2 / |x - y|^{n+a}, 0 < a < 2.
inline FormResult fractional_form(const RadialProfile& psi, double a, int n, const QuadratureSpec& spec = {}) {
  detail::require_fractional_a(a, n, "fractional_form");
  return detail::two_resolution<1>(psi, a, n, spec, detail::PlainForm<1>{&psi, 0.5 * (n - a), 0.0})[0];
}

/// (psi, |p|^a psi) and (psi, J_{a,b,n} psi) from one pass of the integral route.
inline std::array<FormResult, 2> fractional_and_jordan(const RadialProfile& psi, double a, double b, int n,
                                                       const QuadratureSpec& spec = {}) {
  detail::require_fractional_a(a, n, "jordan_form");
  if (!(b >= 0.0)) throw DomainError("jordan_form: need b >= 0");
  return detail::two_resolution<2>(psi, a, n, spec, detail::PlainForm<2>{&psi, 0.5 * (n - a), b});
}

/// (psi, J_{a,b,n} psi) with J = (|p|^a |q|^b + |q|^b |p|^a) / 2. For a < 2 by the polarised
/// double integral; for a >= 2 and b < 2 by exchanging |p| and |q| through the exact transform
/// of an even GaussianPoly profile.
inline FormResult jordan_form(const RadialProfile& psi, double a, double b, int n, const QuadratureSpec& spec = {}) {
  if (a >= 2.0) {
    if (!(b > 0.0 && b < 2.0)) throw DomainError("jordan_form: a >= 2 needs 0 < b < 2 for the exchanged route");
    if (!psi.is_gaussian_poly() || !psi.as_gaussian_poly().is_even()) {
      throw DomainError("jordan_form: a >= 2 is supported for even GaussianPoly profiles only");
    }
    const RadialProfile hat = fourier_even_gaussian_poly(psi, n);
    FormResult r = fractional_and_jordan(hat, b, a, n, spec)[1];
    r.route = "integral-exchanged";
    r.notes.push_back("computed as (F psi, J_{b,a,n} F psi)");
    return r;
  }
  return fractional_and_jordan(psi, a, b, n, spec)[1];
}

inline FormResult jordan_form(const RadialProfile& psi, const ExponentTriple& t, const QuadratureSpec& spec = {}) {
  return jordan_form(psi, t.a, t.b, t.n, spec);
}

/// (psi, H_{a,n} psi) with H = |p|^a - C_{a,n} |q|^{-a}, through the ground-state representation.
inline FormResult hardy_gsr_form(const RadialProfile& psi, double a, int n, const QuadratureSpec& spec = {}) {
  detail::require_fractional_a(a, n, "hardy_gsr_form");
  if (!(a < n)) throw DomainError("hardy_gsr_form: need a < n");
  auto r = detail::two_resolution<1>(psi, a, n, spec, detail::GroundStateForm<1>{&psi, 0.5 * (n - a), 0.0})[0];
  if (psi.small_r_power() == 0.0) r.notes.push_back("profile does not vanish at the origin; identity holds by density");
  return r;
}

/// Weighted Hardy term (psi, |q|^{b/2} H_{a,n} |q|^{b/2} psi) and the remainder
///   alpha int int (|x|^{b/2} - |y|^{b/2})^2 |psi(x)|x|^g - psi(y)|y|^g|^2 / (2 |x|^g |x-y|^{n+a} |y|^g),
/// g = (n + b - a) / 2, from one pass.
inline std::array<FormResult, 2> weighted_hardy_and_remainder(const RadialProfile& psi, double a, double b, int n,
                                                              const QuadratureSpec& spec = {}) {
  detail::require_fractional_a(a, n, "gsr_remainder");
  if (!(a < n)) throw DomainError("gsr_remainder: need a < n");
  if (!(b >= 0.0 && b < n + a)) throw DomainError("gsr_remainder: need 0 <= b < n + a");
  return detail::two_resolution<2>(psi, a, n, spec, detail::GroundStateForm<2>{&psi, 0.5 * (n + b - a), b});
}

/// Remainder of the ground-state identity for J_{a,b,n}; non-negative.
inline FormResult gsr_remainder(const RadialProfile& psi, const ExponentTriple& t, const QuadratureSpec& spec = {}) {
  if (!t.theorem2_ok()) throw DomainError("gsr_remainder: need a + b <= n and 0 < min(a, b) < 2");
  return weighted_hardy_and_remainder(psi, t.a, t.b, t.n, spec)[1];
}

/// (psi, |q|^{b/2} H_{a,n} |q|^{b/2} psi). For a = 2 it is evaluated by the local route
/// int |grad phi|^2 - ((n-2)^2/4) int |phi|^2 |x|^{-2}, phi = r^{b/2} psi.
inline FormResult weighted_hardy_term(const RadialProfile& psi, double a, double b, int n,
                                      const QuadratureSpec& spec = {}) {
  if (a == 2.0) {
    if (!(n > 2)) throw DomainError("weighted_hardy_term: a = 2 needs n > 2");
    FormResult r;
    r.route = "local";
    const double grad = dirichlet_form(psi, 0.5 * b, n);
    const double pot = weighted_norm(psi, b - 2.0, n);
    r.value = grad - hardy_const(2.0, n) * pot;
    r.error_estimate = 1e-9 * (std::abs(grad) + hardy_const(2.0, n) * std::abs(pot));
    r.spec_used = spec;
    return r;
  }
  detail::require_fractional_a(a, n, "weighted_hardy_term");
  if (!(a < n)) throw DomainError("weighted_hardy_term: need a < n");
  return detail::two_resolution<1>(psi, a, n, spec, detail::GroundStateForm<1>{&psi, 0.5 * (n + b - a), b})[0];
}

inline FormResult weighted_hardy_term(const RadialProfile& psi, const ExponentTriple& t,
                                      const QuadratureSpec& spec = {}) {
  return weighted_hardy_term(psi, t.a, t.b, t.n, spec);
}

}  // namespace hardy
