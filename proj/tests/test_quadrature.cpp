#include "nctvem/quadrature.hpp"
#include "nctvem/regularity.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nctvem;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

std::vector<Vec2> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

Complex pw_oracle(const std::vector<Vec2>& poly, const Vec2& v, double kappa, int n = 40, int levels = 2) {
  const Vec2 c = audit_polygon(poly).star_center;
  return oracle::polygon(poly, c, [&](const Vec2& x) { return std::exp(Complex(0.0, kappa * v.dot(x))); }, n, levels);
}

}  // namespace

TEST(GaussLegendre, MatchesGolubWelsch) {
  for (int n : {1, 2, 5, 20, 64}) {
    const auto& r = gauss_legendre(n);
    const auto o = oracle::gauss_legendre(n);
    std::vector<double> x = r.nodes;
    std::sort(x.begin(), x.end());
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], o.x[i], 1e-14);
    double s = 0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s, 2.0, 1e-14);
  }
}

TEST(EdgeOsc, ZeroVectorGivesLength) {
  EXPECT_NEAR(std::abs(edge_osc_integral({0, 0}, {0.3, 0.4}, {0, 0}, 9.0) - Complex(0.5)), 0.0, 1e-15);
}

TEST(EdgeOsc, OrthogonalVector) {
  const Vec2 a{0.1, 0.2}, b{0.1, 0.9}, v{0.7, 0.0};
  const double kappa = 11.0;
  const Complex expect = 0.7 * std::exp(Complex(0.0, kappa * v.dot(0.5 * (a + b))));
  EXPECT_LT(rel(edge_osc_integral(a, b, v, kappa), expect), 1e-14);
}

TEST(EdgeOsc, MatchesGaussOracle) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 50; ++t) {
    const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, v{u(rng), u(rng)};
    const double kappa = 1 + 30 * std::abs(u(rng));
    const Complex o = oracle::segment(a, b, [&](const Vec2& x) { return std::exp(Complex(0.0, kappa * v.dot(x))); }, 64);
    EXPECT_LT(std::abs(edge_osc_integral(a, b, v, kappa) - o), 1e-12 * (b - a).norm());
    // conjugate symmetry
    EXPECT_LT(std::abs(edge_osc_integral(a, b, -v, kappa) - std::conj(edge_osc_integral(a, b, v, kappa))), 1e-15);
  }
}

TEST(PolygonOsc, SquareArea) {
  EXPECT_EQ(polygon_osc_integral(unit_square(), {0, 0}, 4.0), Complex(1.0));
}

TEST(PolygonOsc, SquareSeparable) {
  const Complex expect = (std::exp(Complex(0, kPi)) - 1.0) / Complex(0, kPi);
  EXPECT_NEAR(std::abs(expect - Complex(0, 2 / kPi)), 0.0, 1e-15);
  EXPECT_LT(rel(polygon_osc_integral(unit_square(), {1, 0}, kPi), expect), 1e-14);
}

TEST(PolygonOsc, MatchesTriangleOracle) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 60; ++t) {
    // random star-shaped polygon around the origin
    const int m = 3 + t % 7;
    std::vector<double> ang(m);
    for (auto& a : ang) a = 2 * kPi * u(rng);
    std::sort(ang.begin(), ang.end());
    std::vector<Vec2> poly;
    for (double a : ang) poly.push_back((0.4 + 0.6 * u(rng)) * Vec2(std::cos(a), std::sin(a)) + Vec2(2, -1));
    if (!is_simple(poly) || signed_area(poly) < 1e-3) continue;  // counter-clockwise only
    const double h = diameter(poly);
    const double kappa = (0.01 + 20 * u(rng)) / h;  // kappa h up to 20
    const double th = 2 * kPi * u(rng), len = 2 * u(rng);
    const Vec2 v = len * Vec2(std::cos(th), std::sin(th));
    const Complex o = pw_oracle(poly, v, kappa);
    EXPECT_LT(std::abs(polygon_osc_integral(poly, v, kappa) - o), 1e-10 * area(poly)) << "t=" << t;
  }
}

TEST(PolygonOsc, SmallArgumentBranch) {
  // |v| kappa h < 1 uses the series; compare just below and above the switch and with the oracle
  const std::vector<Vec2> poly{{0.1, 0.1}, {0.3, 0.12}, {0.35, 0.3}, {0.2, 0.4}, {0.05, 0.25}};
  for (double len : {1e-11, 1e-6, 1e-3, 0.1, 2.0}) {
    const Vec2 v = len * Vec2(0.6, 0.8);
    const Complex o = pw_oracle(poly, v, 3.0);
    EXPECT_LT(std::abs(polygon_osc_integral(poly, v, 3.0) - o), 1e-14) << len;
  }
}

TEST(PolygonOsc, AdditiveUnderSplitting) {
  const std::vector<Vec2> sq = unit_square(), t1{{0, 0}, {1, 0}, {1, 1}}, t2{{0, 0}, {1, 1}, {0, 1}};
  for (const Vec2 v : {Vec2(1, 0), Vec2(0.3, -0.8), Vec2(1e-9, 2e-9)}) {
    const double kappa = 13.0;
    EXPECT_LT(std::abs(polygon_osc_integral(sq, v, kappa) - polygon_osc_integral(t1, v, kappa) -
                       polygon_osc_integral(t2, v, kappa)),
              1e-13);
  }
}

TEST(EdgeQuadrature, ConstantAndPolynomial) {
  const Vec2 a{0.2, 0.1}, b{1.1, -0.3};
  const double h = (b - a).norm();
  EXPECT_NEAR(std::abs(edge_quadrature(a, b, [](const Vec2&) { return Complex(1.0); }, 3) - h), 0.0, 1e-15);
  const int n = 6;
  // s^(2n-1) + s^(2n-2) along the edge, s in [0, h]: exact integral h^2n / 2n + h^(2n-1) / (2n-1)
  const Complex got = edge_quadrature(a, b, [&](const Vec2& x) {
    const double s = (x - a).norm();
    return Complex(std::pow(s, 2 * n - 1) + std::pow(s, 2 * n - 2));
  }, n);
  const double exact = std::pow(h, 2 * n) / (2 * n) + std::pow(h, 2 * n - 1) / (2 * n - 1);
  EXPECT_LT(std::abs(got - exact) / exact, 1e-13);
}

TEST(EdgeQuadrature, PlaneWaveAgainstClosedForm) {
  const Vec2 a{0, 0}, b{0.4, 0.3}, d{std::cos(0.3), std::sin(0.3)};
  const double kappa = 60.0, h = 0.5;
  const int n = static_cast<int>(std::ceil(kappa * h / 2 + 10));
  const Complex q = edge_quadrature(a, b, [&](const Vec2& x) { return std::exp(Complex(0, kappa * d.dot(x))); }, n);
  EXPECT_LT(std::abs(q - edge_osc_integral(a, b, d, kappa)), 1e-12);
}

TEST(EdgeQuadrature, Linear) {
  const Vec2 a{0, 0}, b{1, 2};
  auto f = [](const Vec2& x) { return Complex(std::sin(x.x()), x.y()); };
  auto g = [](const Vec2& x) { return Complex(x.x() * x.y(), -1.0); };
  const Complex s(0.3, -2.0);
  const Complex lhs = edge_quadrature(a, b, [&](const Vec2& x) { return f(x) + s * g(x); }, 10);
  EXPECT_LT(std::abs(lhs - edge_quadrature(a, b, f, 10) - s * edge_quadrature(a, b, g, 10)), 1e-14);
}

TEST(PolygonQuadrature, AreaAndQuadratic) {
  const auto sq = unit_square();
  EXPECT_NEAR(polygon_quadrature(sq, {0.5, 0.5}, [](const Vec2&) { return 1.0; }, 1).real(), 1.0, 1e-15);
  const Complex q = polygon_quadrature(sq, {0.5, 0.5}, [](const Vec2& x) { return x.squaredNorm(); }, 2);
  EXPECT_NEAR(q.real(), 2.0 / 3.0, 1e-14);
  const std::vector<Vec2> l{{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}};
  EXPECT_NEAR(polygon_quadrature(l, {0.25, 0.25}, [](const Vec2&) { return 1.0; }, 1).real(), 0.75, 1e-14);
}

TEST(PolygonQuadrature, PlaneWaveAgainstClosedForm) {
  std::vector<Vec2> hex;
  for (int i = 0; i < 6; ++i) hex.push_back(Vec2(0.5, 0.5) + 0.2 * Vec2(std::cos(i * kPi / 3 + 0.1), std::sin(i * kPi / 3 + 0.1)));
  for (double kappa : {1.0, 30.0, 100.0}) {
    const Vec2 v{0.8, -1.3};
    const double h = diameter(hex);
    const Complex q = polygon_quadrature(hex, centroid(hex), [&](const Vec2& x) { return std::exp(Complex(0, kappa * v.dot(x))); },
                                         default_triangle_degree(kappa * v.norm(), h));
    EXPECT_LT(std::abs(q - polygon_osc_integral(hex, v, kappa)), 1e-9 * area(hex)) << kappa;
  }
}

TEST(Sinc, SmallArguments) {
  for (double b : {0.0, 1e-12, 1e-9, 1e-8, 2e-8, 1e-3, 1.0, 30.0})
    EXPECT_NEAR(sinc(b), b == 0 ? 1.0 : std::sin(b) / b, 1e-16);
}
