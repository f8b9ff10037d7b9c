#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/specialfn.hpp"
#include "hardy/testfuncs.hpp"
#include "hardy/transforms.hpp"

namespace {

using hardy::RadialProfile;

constexpr double pi = std::numbers::pi;

double gaussian_closed_form(double a, int n) {
  return std::pow(pi, 0.5 * n) * std::tgamma(0.5 * (n + a)) / std::tgamma(0.5 * n);
}

TEST(Hankel, GaussianIsAFixedPoint) {
  const auto g = RadialProfile::gaussian();
  for (int n = 1; n <= 4; ++n) {
    const auto hat = hardy::hankel_transform(g, n, 0.01, 10.0, 121);
    double worst = 0.0;
    for (std::size_t i = 0; i < hat.nodes.size(); ++i) {
      worst = std::max(worst, std::abs(hat.values[i] - std::exp(-0.5 * hat.nodes[i] * hat.nodes[i])));
    }
    EXPECT_LE(worst, 1e-6) << "n=" << n;
  }
  EXPECT_NEAR(hardy::hankel_value(g, 0.0, 3, 1.0), 0.6065306597126334, 1e-12);
}

TEST(Hankel, QuadraticTimesGaussian) {
  // r^2 e^{-r^2/2} maps to (n - rho^2) e^{-rho^2/2}.
  const auto psi = RadialProfile::gaussian_poly({0.0, 0.0, 1.0});
  for (int n = 1; n <= 5; ++n) {
    for (double rho : {0.05, 0.7, 1.9, 4.0, 9.0}) {
      const double want = (n - rho * rho) * std::exp(-0.5 * rho * rho);
      EXPECT_NEAR(hardy::hankel_value(psi, 0.0, n, rho), want, 1e-10) << n << " " << rho;
    }
  }
}

// Reference values: tests/oracle/generate.py (confluent hypergeometric closed form).
TEST(Hankel, NonIntegerPowerTimesGaussian) {
  const auto g = RadialProfile::gaussian();
  struct Case {
    double w;
    int n;
    double rho;
    double v;
  };
  const Case cases[] = {{0.5, 3, 0.3, 1.1700988720368636},    {0.5, 3, 2.0, 0.086708629262516346},
                        {0.5, 3, 7.0, -0.0009115378407960141}, {1.0, 2, 0.3, 1.1710536549907546},
                        {1.0, 2, 2.0, -0.062588975081775011},  {1.0, 2, 7.0, -0.0032246363203389123},
                        {1.5, 1, 0.3, 0.76648813733390859},    {1.5, 1, 2.0, -0.31901851769123675},
                        {1.5, 1, 7.0, -0.0063807654807177192}};
  for (const auto& c : cases) {
    EXPECT_NEAR(hardy::hankel_value(g, c.w, c.n, c.rho), c.v, 1e-9 * std::max(1.0, std::abs(c.v)))
        << c.w << " " << c.n << " " << c.rho;
  }
}

TEST(Hankel, ExactEvenTransformMatchesQuadrature) {
  const auto psi = RadialProfile::gaussian_poly({1.0, 0.0, -0.5, 0.0, 0.25});
  for (int n = 1; n <= 4; ++n) {
    const auto hat = hardy::fourier_even_gaussian_poly(psi, n);
    for (double rho : {0.1, 1.0, 3.3}) {
      EXPECT_NEAR(hat(rho), hardy::hankel_value(psi, 0.0, n, rho), 1e-11) << n << " " << rho;
    }
  }
  EXPECT_THROW((void)hardy::fourier_even_gaussian_poly(RadialProfile::gaussian_poly({0.0, 1.0}), 3),
               hardy::DomainError);
}

TEST(Hankel, UnitarityForRandomProfilesUpToDegreeSix) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int deg = 0; deg <= 6; ++deg) {
    std::vector<double> c(deg + 1);
    for (double& x : c) x = coef(rng);
    const auto psi = RadialProfile::gaussian_poly(c);
    for (int n = 1; n <= 4; ++n) {
      const double lhs = hardy::weighted_norm(psi, 0.0, n);
      const double rhs = hardy::spectral_form(psi, 0.0, n).value;
      EXPECT_LE(std::abs(lhs - rhs), 1e-8 * lhs) << "deg=" << deg << " n=" << n;
    }
  }
}

TEST(Hankel, SampledProfileInterpolatesAndSerialises) {
  const auto hat = hardy::hankel_transform(RadialProfile::gaussian(), 3, 0.01, 10.0, 201);
  EXPECT_NEAR(hat(1.234), std::exp(-0.5 * 1.234 * 1.234), 1e-6);
  EXPECT_THROW((void)hat(20.0), hardy::DomainError);
  std::ostringstream os;
  hat.to_csv(os);
  EXPECT_EQ(os.str().substr(0, 11), "node,value\n");
  EXPECT_THROW((void)hardy::hankel_transform(RadialProfile::gaussian(), 3, std::vector<double>{1.0, 0.5}),
               hardy::DomainError);
}

TEST(SpectralForm, GaussianClosedForm) {
  const auto g = RadialProfile::gaussian();
  EXPECT_NEAR(hardy::spectral_form(g, 1.0, 3).value, 2.0 * pi, 1e-12);
  EXPECT_NEAR(hardy::spectral_form(g, 0.0, 3).value, 5.568327996831708, 1e-12);
  EXPECT_NEAR(hardy::spectral_form(g, 2.0, 3).value, 8.352491995247562, 1e-11);
  for (int n = 1; n <= 4; ++n) {
    for (double a : {0.25, 0.5, 1.0, 1.5, 1.9, 3.0}) {
      const auto r = hardy::spectral_form(g, a, n);
      const double want = gaussian_closed_form(a, n);
      EXPECT_NEAR(r.value, want, 1e-9 * want) << a << " " << n;
      EXPECT_LE(r.error_estimate, 1e-8 * want);
      EXPECT_EQ(r.route, "spectral");
    }
  }
}

// Reference values: tests/oracle/generate.py.
TEST(SpectralForm, QuadraticTimesGaussian) {
  const auto psi = RadialProfile::gaussian_poly({0.0, 0.0, 1.0});
  EXPECT_NEAR(hardy::spectral_form(psi, 0.5, 1).value, 0.99565107075295684, 1e-10);
  EXPECT_NEAR(hardy::spectral_form(psi, 1.5, 2).value, 5.2332676496003492, 1e-9);
  EXPECT_NEAR(hardy::spectral_form(psi, 1.0, 3).value, 18.849555921538759, 1e-9);
}

TEST(SpectralForm, SecondOrderMatchesLocalLaplacian) {
  for (const auto& c : {std::vector<double>{1.0}, std::vector<double>{1.0, 0.0, 2.0},
                        std::vector<double>{0.5, 0.0, 0.0, 0.3}, std::vector<double>{0.0, 0.0, 1.0, 0.0, -0.2}}) {
    const auto psi = RadialProfile::gaussian_poly(c);
    for (int n = 3; n <= 5; ++n) {
      const double local = hardy::inner_product(psi, hardy::radial_laplacian(psi, n), n);
      EXPECT_NEAR(hardy::spectral_form(psi, 2.0, n).value, local, 1e-6 * std::abs(local)) << psi.describe();
    }
  }
  // a linear term is not smooth at the origin in n > 1, so the local route refuses it
  EXPECT_THROW((void)hardy::radial_laplacian(RadialProfile::gaussian_poly({0.5, -1.0}), 3), hardy::DomainError);
}

TEST(JordanSpectral, ReducesAtZeroExponents) {
  const auto psi = RadialProfile::gaussian_poly({1.0, 0.5, -0.3});
  const int n = 3;
  EXPECT_NEAR(hardy::jordan_spectral_form(psi, 1.2, 0.0, n).value, hardy::spectral_form(psi, 1.2, n).value, 1e-12);
  const double wn = hardy::weighted_norm(psi, 1.3, n);
  EXPECT_NEAR(hardy::jordan_spectral_form(psi, 0.0, 1.3, n).value, wn, 1e-8 * wn);
}

// Reference values: tests/oracle/generate.py (hypergeometric transform of r^b e^{-r^2/2}).
TEST(JordanSpectral, GaussianReferenceValues) {
  const auto g = RadialProfile::gaussian();
  struct Case {
    double a, b;
    int n;
    double v;
  };
  const Case cases[] = {{1.0, 1.0, 3, 5.9576908154938045}, {0.5, 1.5, 4, 16.344269195878711},
                        {1.0, 0.5, 2, 2.2315438990676334}, {1.5, 1.0, 3, 6.0678403737073111},
                        {2.0, 1.0, 3, 6.2831853071795865}, {0.5, 2.0, 3, 7.2183002063453092}};
  for (const auto& c : cases) {
    const auto r = hardy::jordan_spectral_form(g, hardy::ExponentTriple::make(c.a, c.b, c.n));
    EXPECT_NEAR(r.value, c.v, 1e-8 * c.v) << c.a << " " << c.b << " " << c.n;
  }
}

TEST(JordanSpectral, RejectsPowerCutoff) {
  EXPECT_THROW((void)hardy::spectral_form(RadialProfile::power_cutoff(1.0, 10.0), 1.0, 3), hardy::DomainError);
}

TEST(PowerPairing, ClosedFormGrid) {
  for (int n = 2; n <= 5; ++n) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0, 2.5}) {
      if (!(alpha < n)) continue;
      const auto rep = hardy::fourier_power_pairing(alpha, n);
      EXPECT_TRUE(rep.passed) << alpha << " " << n << " rel " << rep.rel_discrepancy;
      EXPECT_LE(rep.rel_discrepancy, 1e-12);
    }
  }
  const auto rep = hardy::fourier_power_pairing(1.0, 3);
  EXPECT_NEAR(rep.lhs.value, 4.0 * pi, 1e-13);
  EXPECT_NEAR(rep.rhs.value, 4.0 * pi, 1e-13);
}

}  // namespace
