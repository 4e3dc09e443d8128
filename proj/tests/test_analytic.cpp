#include "nctvem/analytic.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nctvem;

namespace {

double err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Bessel, ValuesAtOne) {
  const auto b = bessel_j0y0j1y1(1.0);
  EXPECT_NEAR(b.j0, 0.7651976866, 1e-9);
  EXPECT_NEAR(b.y0, 0.0882569642, 1e-9);
  // 30-term power series for J0(1)
  double s = 0, t = 1;
  for (int k = 0; k < 30; ++k) {
    s += t;
    t *= -0.25 / ((k + 1.0) * (k + 1.0));
  }
  EXPECT_NEAR(b.j0, s, 1e-15);
}

TEST(Bessel, AgainstIntegralRepresentation) {
  for (int i = 0; i < 300; ++i) {
    const double x = 0.01 * std::pow(20000.0, i / 299.0);
    const auto b = bessel_j0y0j1y1(x);
    const auto o = oracle::bessel_integral(x);
    EXPECT_LT(err(b.j0, o.j0), 1e-10) << x;
    EXPECT_LT(err(b.j1, o.j1), 1e-10) << x;
    EXPECT_LT(err(b.y0, o.y0), 1e-10) << x;
    EXPECT_LT(err(b.y1, o.y1), 1e-10) << x;
  }
}

TEST(Bessel, AgainstQuadPrecisionSeries) {
  for (int i = 0; i < 200; ++i) {
    const double x = 0.01 + 39.99 * i / 199.0;
    const auto b = bessel_j0y0j1y1(x);
    const auto o = oracle::bessel_series_quad(x);
    EXPECT_LT(err(b.j0, o.j0), 1e-10) << x;
    EXPECT_LT(err(b.y1, o.y1), 1e-10) << x;
  }
}

TEST(Bessel, AgainstStandardLibrary) {
  for (double x : {0.05, 0.9, 3.0, 7.99, 8.01, 11.99, 12.01, 50.0, 150.0}) {
    const auto b = bessel_j0y0j1y1(x);
    EXPECT_LT(err(b.j0, std::cyl_bessel_j(0.0, x)), 1e-10) << x;
    EXPECT_LT(err(b.j1, std::cyl_bessel_j(1.0, x)), 1e-10) << x;
    EXPECT_LT(err(b.y0, std::cyl_neumann(0.0, x)), 1e-10) << x;
    EXPECT_LT(err(b.y1, std::cyl_neumann(1.0, x)), 1e-10) << x;
  }
}

TEST(Bessel, Wronskian) {
  for (int i = 0; i < 400; ++i) {
    const double x = 0.1 * std::pow(1000.0, i / 399.0);
    const auto b = bessel_j0y0j1y1(x);
    const double w = b.j1 * b.y0 - b.j0 * b.y1, expect = 2.0 / (kPi * x);
    EXPECT_LT(std::abs(w - expect) / expect, 1e-9) << x;
  }
}

TEST(Bessel, LargeArgumentModulus) {
  const auto b = bessel_j0y0j1y1(100.0);
  const double mod = b.j0 * b.j0 + b.y0 * b.y0;
  // |H0|^2 ~ 2/(pi x) (1 - 1/(8x^2)...)
  EXPECT_LT(std::abs(mod - 2.0 / (kPi * 100.0)) / (2.0 / (kPi * 100.0)), 1e-4);
}

TEST(Bessel, NonPositiveRejected) {
  EXPECT_THROW(bessel_j0y0j1y1(0.0), std::domain_error);
  EXPECT_THROW(bessel_j0y0j1y1(-1.0), std::domain_error);
}

TEST(Exact, PlaneWave) {
  const auto u = ExactSolution::planewave({3, 4}, 5.0);
  for (const Vec2 x : {Vec2(0, 0), Vec2(0.3, -2.0), Vec2(10, 1)}) EXPECT_NEAR(std::abs(u.value(x)), 1.0, 1e-15);
  const Vec2 d(0.6, 0.8), x(0.2, 0.7);
  EXPECT_NEAR(std::abs(impedance_data(u, x, d, 5.0) - Complex(0, 10.0) * u.value(x)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(impedance_data(u, x, Vec2(-0.8, 0.6), 5.0) - Complex(0, 5.0) * u.value(x)), 0.0, 1e-14);
}

TEST(Exact, HankelRadialAndSourceRejected) {
  const auto u = ExactSolution::hankel({-0.25, 0}, 16.0);
  const Vec2 a = Vec2(-0.25, 0) + 0.7 * Vec2(std::cos(0.3), std::sin(0.3));
  const Vec2 b = Vec2(-0.25, 0) + 0.7 * Vec2(std::cos(1.1), std::sin(1.1));
  EXPECT_NEAR(std::abs(u.value(a) - u.value(b)), 0.0, 1e-12);  // k r = 11.2: ascending series, ~e^x/x cancellation
  EXPECT_THROW(u.eval({-0.25, 0}), std::domain_error);
}

TEST(Exact, GradientMatchesFiniteDifferences) {
  for (double kappa : {1.0, 16.0, 64.0}) {
    const auto u = ExactSolution::hankel({-0.25, 0}, kappa);
    for (const Vec2 x : {Vec2(0.1, 0.2), Vec2(0.9, 0.9), Vec2(0.5, 0.0), Vec2(0.0, 1.0)}) {
      const double h = 1e-6 * (x - Vec2(-0.25, 0)).norm();
      const auto vg = u.eval(x);
      for (int c = 0; c < 2; ++c) {
        Vec2 e = Vec2::Zero();
        e[c] = h;
        const Complex fd = (u.value(x + e) - u.value(x - e)) / (2 * h);
        EXPECT_LT(std::abs(fd - vg.gradient[c]), 1e-5 * std::max(1.0, vg.gradient.norm())) << kappa;
      }
    }
  }
}

TEST(Exact, HelmholtzResidualSecondOrder) {
  for (const bool hankel : {true, false}) {
    const double kappa = 10.0;
    const auto u = hankel ? ExactSolution::hankel({-0.25, 0}, kappa) : ExactSolution::planewave({1, 2}, kappa);
    double prev = 0;
    for (double hfd : {4e-3, 2e-3, 1e-3}) {
      double worst = 0;
      for (int i = 1; i < 6; ++i)
        for (int j = 1; j < 6; ++j) {
          const Vec2 x(i / 6.0, j / 6.0);
          const Complex lap = (u.value(x + Vec2(hfd, 0)) + u.value(x - Vec2(hfd, 0)) + u.value(x + Vec2(0, hfd)) +
                               u.value(x - Vec2(0, hfd)) - 4.0 * u.value(x)) / (hfd * hfd);
          worst = std::max(worst, std::abs(lap + kappa * kappa * u.value(x)));
        }
      EXPECT_LT(worst, 5.0 * hfd * hfd * std::pow(kappa, 4));
      if (prev > 0) EXPECT_NEAR(prev / worst, 4.0, 0.5);
      prev = worst;
    }
  }
}

TEST(Exact, ImpedanceOnSquareSides) {
  const double kappa = 16.0;
  const auto u = ExactSolution::hankel({-0.25, 0}, kappa);
  struct Side {
    Vec2 a, b, n;
  };
  const Side sides[] = {{{0, 0}, {1, 0}, {0, -1}}, {{1, 0}, {1, 1}, {1, 0}}, {{1, 1}, {0, 1}, {0, 1}}, {{0, 1}, {0, 0}, {-1, 0}}};
  for (const auto& s : sides)
    for (int i = 0; i <= 10; ++i) {
      const Vec2 x = s.a + (i / 10.0) * (s.b - s.a);
      const Complex g = impedance_data(u, x, s.n, kappa);
      EXPECT_TRUE(std::isfinite(g.real()) && std::isfinite(g.imag()));
      const double h = 1e-6;
      const Complex dn = (u.value(x + h * s.n) - u.value(x - h * s.n)) / (2 * h);
      EXPECT_LT(std::abs(g - (dn + Complex(0, kappa) * u.value(x))), 1e-5 * std::max(1.0, std::abs(g)));
    }
}
