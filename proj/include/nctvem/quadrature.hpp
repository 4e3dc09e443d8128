#pragma once

// Closed-form plane-wave integrals over segments and polygons, and Gauss rules for
// everything that is not a plane-wave product.

#include "nctvem/geometry.hpp"

#include <map>
#include <mutex>

namespace nctvem {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1]; cached, thread-safe.
inline const QuadratureRule& gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  return it->second;
}

inline double sinc(double beta) {
  if (beta == 0.0) return 1.0;
  if (std::abs(beta) < 1e-8) {
    const double b2 = beta * beta;
    return 1.0 - b2 / 6.0 + b2 * b2 / 120.0;
  }
  return std::sin(beta) / beta;
}

/// Integral over the segment a->b of exp(i kappa v . x) ds.
inline Complex edge_osc_integral(const Vec2& a, const Vec2& b, const Vec2& v, double kappa) {
  const Vec2 mid = 0.5 * (a + b);
  const double h = (b - a).norm();
  if (h == 0.0) return 0.0;
  const double beta = 0.5 * kappa * v.dot(b - a);
  return h * std::exp(Complex(0.0, kappa * v.dot(mid))) * sinc(beta);
}

namespace detail {

// Taylor expansion of the integral of exp(i z . y) over a polygon (given relative to a
// reference point). Moments of the homogeneous polynomials (z . y)^n come in closed form
// from Euler's identity: integral_K f = 1/(n+2) * boundary integral of f (y . n).
inline Complex polygon_osc_taylor(std::span<const Vec2> poly, const Vec2& z) {
  const std::size_t m = poly.size();
  std::vector<double> alpha(m), cr(m);
  double radius = 0.0;
  for (const auto& y : poly) radius = std::max(radius, y.norm());
  const double zr = z.norm() * radius;
  for (std::size_t i = 0; i < m; ++i) {
    alpha[i] = z.dot(poly[i]);
    cr[i] = cross(poly[i], poly[(i + 1) % m]);
  }
  // S[i] holds sum_{j=0}^n a^j b^(n-j) for edge i; apow[i] = a^n.
  std::vector<double> s(m, 1.0), apow(m, 1.0);
  Complex sum = 0.0;
  Complex ipow = 1.0;
  double fact = 1.0;
  double bound = 1.0;  // (|z| R)^n / n! dominates |term| / area
  for (int n = 0; n < 60; ++n) {
    if (n > 0) {
      ipow *= Complex(0.0, 1.0);
      fact *= n;
      bound *= zr / n;
      for (std::size_t i = 0; i < m; ++i) {
        apow[i] *= alpha[i];
        s[i] = alpha[(i + 1) % m] * s[i] + apow[i];
      }
    }
    double moment = 0.0;
    for (std::size_t i = 0; i < m; ++i) moment += cr[i] * s[i];
    moment /= (n + 1.0) * (n + 2.0);
    sum += ipow * (moment / fact);
    if (bound < 1e-18) break;
  }
  return sum;
}

}  // namespace detail

/// Integral over a simple counter-clockwise polygon of exp(i kappa v . x) dx.
inline Complex polygon_osc_integral(std::span<const Vec2> poly, const Vec2& v, double kappa) {
  const double vn = v.norm();
  if (vn <= 1e-12 * kappa) return area(poly);
  const std::size_t m = poly.size();
  Vec2 ref = Vec2::Zero();
  for (const auto& p : poly) ref += p;
  ref /= static_cast<double>(m);
  std::vector<Vec2> shifted(m);
  double radius = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    shifted[i] = poly[i] - ref;
    radius = std::max(radius, shifted[i].norm());
  }
  const Complex shift = std::exp(Complex(0.0, kappa * v.dot(ref)));
  // The divergence form divides by kappa |v|; below unit phase variation use the series.
  if (kappa * vn * radius < 1.0) return shift * detail::polygon_osc_taylor(shifted, kappa * v);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = shifted[i];
    const Vec2& b = shifted[(i + 1) % m];
    sum += v.dot(outward_normal(a, b)) * edge_osc_integral(a, b, v, kappa);
  }
  return shift * sum / (Complex(0.0, kappa) * (vn * vn));
}

/// Gauss-Legendre approximation of the integral of f over the segment a->b.
template <class F>
Complex edge_quadrature(const Vec2& a, const Vec2& b, F&& f, int n_points) {
  const auto& rule = gauss_legendre(n_points);
  const Vec2 mid = 0.5 * (a + b);
  const Vec2 half = 0.5 * (b - a);
  const double jac = half.norm();
  Complex sum = 0.0;
  for (int i = 0; i < n_points; ++i) sum += rule.weights[i] * Complex(f(Vec2(mid + rule.nodes[i] * half)));
  return jac * sum;
}

/// Default edge rule for oscillatory boundary data.
inline int default_edge_points(double kappa, double h) {
  return std::max(20, static_cast<int>(std::ceil(3.0 * kappa * h)));
}

/// Collapsed (Duffy) Gauss product rule on a triangle, exact for polynomials of the given degree.
template <class F>
Complex triangle_quadrature(const Vec2& p0, const Vec2& p1, const Vec2& p2, F&& f, int degree) {
  const double twice_area = cross(p1 - p0, p2 - p0);
  const int n = std::max(1, (degree + 2) / 2);
  const auto& ru = gauss_legendre(n + 1);
  const auto& rw = gauss_legendre(n);
  Complex sum = 0.0;
  for (int i = 0; i < n + 1; ++i) {
    const double u = 0.5 * (ru.nodes[i] + 1.0);
    const Vec2 x0 = (1.0 - u) * p0;
    for (int j = 0; j < n; ++j) {
      const double w = 0.5 * (rw.nodes[j] + 1.0);
      const Vec2 x = x0 + u * ((1.0 - w) * p1 + w * p2);
      sum += (0.25 * ru.weights[i] * rw.weights[j] * u) * Complex(f(x));
    }
  }
  return twice_area * sum;
}

/// Fan triangulation about `star_center` with a triangle rule of the given degree.
/// Zero-area triangles are skipped.
template <class F>
Complex polygon_quadrature(std::span<const Vec2> poly, const Vec2& star_center, F&& f, int degree) {
  const std::size_t m = poly.size();
  const double scale = diameter(poly);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    if (std::abs(cross(a - star_center, b - star_center)) <= 1e-15 * scale * scale) continue;
    sum += triangle_quadrature(star_center, a, b, f, degree);
  }
  return sum;
}

/// Triangle degree for error integrals on an element of diameter h: well over ten
/// points per wavelength along each direction.
inline int default_triangle_degree(double kappa, double h) {
  const int n = std::max(10, static_cast<int>(std::ceil(2.0 * kappa * h)) + 6);
  return 2 * n - 1;
}

}  // namespace nctvem
