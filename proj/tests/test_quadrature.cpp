#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hardy/bessel.hpp"
#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specialfn.hpp"

namespace {

// Integral of x^k over [-1, 1].
double monomial_moment(int k) { return k % 2 == 1 ? 0.0 : 2.0 / (k + 1); }

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2NMinus1) {
  for (int order : {1, 2, 5, 12, 16, 40}) {
    const auto& rule = hardy::gauss_legendre(order);
    ASSERT_EQ(rule.size(), static_cast<std::size_t>(order));
    for (int k = 0; k <= 2 * order - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      EXPECT_NEAR(s, monomial_moment(k), 1e-14) << "order " << order << " degree " << k;
    }
  }
}

TEST(GaussLegendre, NodesSortedAndSymmetric) {
  const auto& rule = hardy::gauss_legendre(13);
  for (std::size_t i = 0; i + 1 < rule.size(); ++i) EXPECT_LT(rule.nodes[i], rule.nodes[i + 1]);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    EXPECT_NEAR(rule.nodes[i], -rule.nodes[rule.size() - 1 - i], 1e-15);
    EXPECT_NEAR(rule.weights[i], rule.weights[rule.size() - 1 - i], 1e-15);
  }
  EXPECT_THROW((void)hardy::gauss_legendre(0), hardy::DomainError);
}

TEST(GaussJacobi, ExactMomentsOfTheWeight) {
  // int (1-x)^al (1+x)^be x^k dx, k = 0, 1, checked against Beta-function closed forms.
  for (auto [al, be] : {std::pair{0.0, 0.0}, std::pair{-0.5, -0.5}, std::pair{0.5, 0.5}, std::pair{1.5, -0.5},
                        std::pair{-0.5, 1.0}, std::pair{1.0, 1.0}}) {
    const auto rule = hardy::gauss_jacobi(20, al, be);
    double m0 = 0.0;
    double m1 = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      m0 += rule.weights[i];
      m1 += rule.weights[i] * rule.nodes[i];
    }
    const double beta_fn = hardy::gamma(al + 1) * hardy::gamma(be + 1) / hardy::gamma(al + be + 2);
    const double want0 = std::pow(2.0, al + be + 1) * beta_fn;
    const double want1 = want0 * (be - al) / (al + be + 2);
    EXPECT_NEAR(m0, want0, 1e-13 * want0) << al << " " << be;
    EXPECT_NEAR(m1, want1, 1e-13 * want0) << al << " " << be;
  }
}

TEST(GaussJacobi, ChebyshevNodesAreCosines) {
  const int order = 9;
  const auto rule = hardy::gauss_jacobi(order, -0.5, -0.5);
  for (int k = 0; k < order; ++k) {
    const double want = -std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * order));
    EXPECT_NEAR(rule.nodes[k], want, 1e-14);
    EXPECT_NEAR(rule.weights[k], std::numbers::pi / order, 1e-14);
  }
}

TEST(CompensatedSum, RecoversCancelledLowBits) {
  hardy::CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  // plain summation returns 0 here; the compensated sum keeps the 1000 small terms
  EXPECT_NEAR(s.value(), 1000.0 * 1e-16, 1e-20);
}

TEST(IntegrateGl, SmoothIntegrand) {
  const double v = hardy::integrate_gl([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 8, 16);
  EXPECT_NEAR(v, std::sqrt(std::numbers::pi), 1e-14);
}

TEST(GeometricBreaks, StartAtZeroAndGrow) {
  const auto br = hardy::geometric_breaks(1.0, 0.5, 4);
  const std::vector<double> want = {0.0, 0.0625, 0.125, 0.25, 0.5, 1.0};
  ASSERT_EQ(br.size(), want.size());
  for (std::size_t i = 0; i < br.size(); ++i) EXPECT_DOUBLE_EQ(br[i], want[i]);
}

// Reference values from mpmath at 30 digits (tests/oracle/generate.py).
TEST(Bessel, IntegerOrdersMatchReference) {
  const std::vector<double> xs = {1e-3, 0.5, 3.0, 7.9, 8.1, 15.0, 39.0, 45.0, 120.0, 800.0};
  const std::vector<std::pair<int, std::vector<double>>> table = {
      {0, {0.99999975000001562, 0.9384698072408129, -0.26005195490193344, 0.19436184484127824, 0.14751745404437767,
           -0.014224472826780773, 0.11135769795486712, 0.11581867067325632, 0.071823415829156128,
           0.0088974458838161348}},
      {1, {0.00049999993750000261, 0.24226845767487389, 0.33905895852593646, 0.2191793999217512, 0.24760776698159288,
           0.20510403861352276, 0.064056103688689347, 0.028348854376424528, -0.011805211433001891,
           0.026775138722323195}},
      {2, {1.2499998958333366e-7, 0.030604023458682641, 0.48609126058589108, -0.13887338916488553,
           -0.086379733802009056, 0.041571677975250475, -0.10807276956057536, -0.11455872158985968,
           -0.072020169353039492, -0.0088305080370103268}},
      {3, {2.0833332031250034e-11, 0.0025637299945872441, 0.30906272225525164, -0.28949504000523755,
           -0.29026442564925167, -0.19401825782012263, -0.07514049031028682, -0.038531851851078721,
           0.009404539121233908, -0.026819291262508247}},
  };
  for (const auto& [nu, want] : table) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      EXPECT_NEAR(hardy::bessel_j(nu, xs[i]), want[i], 1e-14 + 1e-13 * std::abs(want[i])) << nu << " " << xs[i];
    }
  }
}

// libstdc++ as a second, independent route in the range where it is accurate.
TEST(Bessel, IntegerOrdersMatchStandardLibrary) {
  for (int nu : {0, 1, 2, 3}) {
    for (double x : {1e-3, 0.5, 3.0, 8.1, 15.0, 39.0}) {
      const double want = std::cyl_bessel_j(static_cast<double>(nu), x);
      EXPECT_NEAR(hardy::bessel_j(nu, x), want, 1e-14 + 1e-13 * std::abs(want)) << nu << " " << x;
    }
  }
}

TEST(RadialKernel, MatchesBesselOverPowerInAllDimensions) {
  const std::vector<double> xs = {1e-4, 0.3, 2.0, 7.5, 8.5, 20.0, 60.0, 300.0};
  const std::vector<std::pair<int, std::vector<double>>> table = {
      {1, {0.79788455681344256, 0.76224823504493552, -0.3320371359079185, 0.27657496832956121, -0.48033600257177781,
           0.32560237666150602, -0.75991561258149498, -0.017630551368400865}},
      {2, {0.9999999975, 0.97762624653829609, 0.22389077914123567, 0.2663396578803784, 0.041939251842934504,
           0.16702466434058315, -0.09147180408906187, -0.033298554876305668}},
      {3, {0.79788455947305776, 0.78597003433451644, 0.36275718902099232, 0.099788759933601389, 0.07495300460733431,
           0.036421246020693749, -0.0040533948091031796, -0.0026589658307654282}},
      {4, {0.499999999375, 0.49439605424368003, 0.28836240387843669, 0.018033123677294067, 0.032131995726359264,
           0.0033416562087925023, 0.00077663972930277196, -0.00010629143792499983}},
      {5, {0.26596152000166027, 0.26357554766201028, 0.1736985812322277, -0.0031428659270392857,
           0.0076856609990188529, -0.00072295282660203067, 0.00020996172715899772, 1.6635095041817152e-7}},
      {6, {0.12499999989583333, 0.12406513276737738, 0.08820850715390943, -0.0040937495204584935,
           0.00030899293577555743, -0.00040085337980749538, 2.584030098546317e-5, 3.6762191111617409e-7}},
  };
  for (const auto& [n, want] : table) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      EXPECT_NEAR(hardy::radial_kernel(n, xs[i]), want[i], 1e-14 + 1e-13 * std::abs(want[i])) << n << " " << xs[i];
    }
  }
}

TEST(RadialKernel, ValueAtZero) {
  // J_nu(x)/x^nu -> 1 / (2^nu Gamma(nu + 1))
  for (int n = 1; n <= 6; ++n) {
    const double nu = 0.5 * n - 1.0;
    EXPECT_NEAR(hardy::radial_kernel(n, 0.0), 1.0 / (std::pow(2.0, nu) * hardy::gamma(nu + 1.0)), 1e-15) << n;
  }
}

}  // namespace
