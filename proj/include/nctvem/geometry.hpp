#pragma once

// Planar geometry primitives shared by the mesh, quadrature and element code.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace nctvem {

using Vec2 = Eigen::Vector2d;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Signed shoelace area; positive for counter-clockwise vertex order.
inline double signed_area(std::span<const Vec2> poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * twice;
}

inline double area(std::span<const Vec2> poly) { return std::abs(signed_area(poly)); }

/// Area centroid. Falls back to the vertex average for degenerate input.
inline Vec2 centroid(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  Vec2 avg = Vec2::Zero();
  for (const auto& p : poly) avg += p;
  avg /= static_cast<double>(n);
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i] - avg;
    const Vec2 q = poly[(i + 1) % n] - avg;
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  if (std::abs(a) <= 1e-300) return avg;
  return avg + c / (3.0 * a);
}

/// Diameter (largest vertex-to-vertex distance).
inline double diameter(std::span<const Vec2> poly) {
  double d = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) d = std::max(d, (poly[i] - poly[j]).norm());
  return d;
}

/// Outward unit normal of the edge a->b of a counter-clockwise polygon.
inline Vec2 outward_normal(const Vec2& a, const Vec2& b) {
  const Vec2 d = (b - a).normalized();
  return {d.y(), -d.x()};
}

inline bool is_convex(std::span<const Vec2> poly, double tol = 1e-12) {
  const std::size_t n = poly.size();
  const double scale = std::max(diameter(poly), 1e-300);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Vec2& c = poly[(i + 2) % n];
    if (cross(b - a, c - b) < -tol * scale * scale) return false;
  }
  return true;
}

/// Proper or touching intersection of the closed segments [a,b] and [c,d].
inline bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    const double v = cross(q - p, r - p);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
           std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

/// True when no two non-adjacent edges of the closed polygon touch.
inline bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

/// Closed half-plane {x : normal . x <= offset}.
struct HalfPlane {
  Vec2 normal;
  double offset;

  double violation(const Vec2& x) const { return normal.dot(x) - offset; }
};

/// Clips a convex polygon against a half-plane (Sutherland-Hodgman step).
/// Consecutive vertices closer than `merge_tol` are collapsed.
inline std::vector<Vec2> clip(std::span<const Vec2> poly, const HalfPlane& hp, double merge_tol = 0.0) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double fp = hp.violation(p);
    const double fq = hp.violation(q);
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  }
  if (merge_tol > 0.0 && out.size() > 1) {
    std::vector<Vec2> dedup;
    dedup.reserve(out.size());
    for (const auto& v : out)
      if (dedup.empty() || (v - dedup.back()).norm() > merge_tol) dedup.push_back(v);
    while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= merge_tol) dedup.pop_back();
    out = std::move(dedup);
  }
  return out;
}

}  // namespace nctvem
