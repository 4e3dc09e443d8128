#pragma once

// Shape-regularity audit: star-shapedness through the half-plane kernel, inscribed ball
// ratios, edge non-degeneracy and edge counts.

#include "nctvem/mesh.hpp"

#include <string>

namespace nctvem {

/// Kernel of a counter-clockwise polygon: intersection of the inner half-planes of all
/// edges. Empty when the polygon is not star-shaped.
inline std::vector<Vec2> polygon_kernel(std::span<const Vec2> poly) {
  const double scale = diameter(poly);
  // Start from the bounding box; the half-planes cut it down to the kernel.
  Vec2 lo = poly[0], hi = poly[0];
  for (const auto& p : poly) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  std::vector<Vec2> kernel = {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n && !kernel.empty(); ++i) {
    const Vec2 nrm = outward_normal(poly[i], poly[(i + 1) % n]);
    kernel = clip(kernel, HalfPlane{nrm, nrm.dot(poly[i])}, 1e-14 * scale);
    if (kernel.size() < 3 || area(kernel) <= 1e-14 * scale * scale) kernel.clear();
  }
  return kernel;
}

/// Largest ball inside a convex polygon (linear program in (x, y, r), solved by vertex
/// enumeration over triples of supporting lines).
struct ChebyshevBall {
  Vec2 center;
  double radius = 0.0;
};

inline ChebyshevBall chebyshev_ball_convex(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  std::vector<Vec2> normals(n);
  std::vector<double> offsets(n);
  for (std::size_t i = 0; i < n; ++i) {
    normals[i] = outward_normal(poly[i], poly[(i + 1) % n]);
    offsets[i] = normals[i].dot(poly[i]);
  }
  const double scale = std::max(diameter(poly), 1e-300);
  ChebyshevBall best{centroid(poly), 0.0};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        Eigen::Matrix3d m;
        Eigen::Vector3d rhs;
        const std::size_t idx[3] = {a, b, c};
        for (int r = 0; r < 3; ++r) {
          m.row(r) << normals[idx[r]].x(), normals[idx[r]].y(), 1.0;
          rhs[r] = offsets[idx[r]];
        }
        if (std::abs(m.determinant()) < 1e-14) continue;
        const Eigen::Vector3d sol = m.partialPivLu().solve(rhs);
        if (sol[2] <= best.radius) continue;
        bool feasible = true;
        for (std::size_t i = 0; i < n && feasible; ++i)
          feasible = normals[i].dot(sol.head<2>()) + sol[2] <= offsets[i] + 1e-12 * scale;
        if (feasible) best = {sol.head<2>(), sol[2]};
      }
  return best;
}

inline double distance_to_boundary(std::span<const Vec2> poly, const Vec2& x) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2 ab = poly[(i + 1) % n] - a;
    const double t = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    d = std::min(d, (a + t * ab - x).norm());
  }
  return d;
}

inline bool contains(std::span<const Vec2> poly, const Vec2& x) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > x.y()) != (b.y() > x.y()) && x.x() < (b.x() - a.x()) * (x.y() - a.y()) / (b.y() - a.y()) + a.x())
      inside = !inside;
  }
  return inside;
}

// Grid search estimate of the inscribed radius for polygons with an empty kernel.
inline double inscribed_radius_estimate(std::span<const Vec2> poly, int samples = 64) {
  Vec2 lo = poly[0], hi = poly[0];
  for (const auto& p : poly) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  double best = 0.0;
  for (int i = 0; i <= samples; ++i)
    for (int j = 0; j <= samples; ++j) {
      const Vec2 x{lo.x() + (hi.x() - lo.x()) * i / samples, lo.y() + (hi.y() - lo.y()) * j / samples};
      if (contains(poly, x)) best = std::max(best, distance_to_boundary(poly, x));
    }
  return best;
}

struct PolygonRegularity {
  double h = 0.0;                    // diameter h_K
  int n_edges = 0;                   // n_K
  double inscribed_radius_ratio = 0; // Chebyshev radius of the kernel over h_K
  bool kernel_nonempty = false;
  double min_edge_ratio = 0;         // min_e h_e / h_K
  Vec2 star_center = Vec2::Zero();   // Chebyshev center of the kernel
};

struct RegularityReport {
  std::vector<PolygonRegularity> polygons;
  double h = 0.0;
  int max_edges = 0;
  std::vector<std::string> violations;
};

inline PolygonRegularity audit_polygon(std::span<const Vec2> poly) {
  PolygonRegularity r;
  r.h = diameter(poly);
  r.n_edges = static_cast<int>(poly.size());
  double min_edge = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) min_edge = std::min(min_edge, (poly[(i + 1) % poly.size()] - poly[i]).norm());
  r.min_edge_ratio = min_edge / r.h;
  const auto kernel = polygon_kernel(poly);
  r.kernel_nonempty = !kernel.empty();
  if (r.kernel_nonempty) {
    const auto ball = chebyshev_ball_convex(kernel);
    r.inscribed_radius_ratio = ball.radius / r.h;
    r.star_center = ball.center;
  } else {
    r.inscribed_radius_ratio = inscribed_radius_estimate(poly) / r.h;
    r.star_center = centroid(poly);
  }
  return r;
}

/// Audits (G1)-(G3)-type regularity. Never throws; failing polygons are listed in `violations`.
inline RegularityReport audit_regularity(const PolygonalMesh& mesh, double rho0) {
  RegularityReport rep;
  for (int k = 0; k < mesh.num_polygons(); ++k) {
    const auto pr = audit_polygon(mesh.polygon_points(k));
    rep.h = std::max(rep.h, pr.h);
    rep.max_edges = std::max(rep.max_edges, pr.n_edges);
    if (!pr.kernel_nonempty) rep.violations.push_back("polygon " + std::to_string(k) + ": not star-shaped");
    else if (pr.inscribed_radius_ratio < rho0)
      rep.violations.push_back("polygon " + std::to_string(k) + ": kernel ball ratio " +
                               std::to_string(pr.inscribed_radius_ratio) + " < rho0");
    if (pr.min_edge_ratio < rho0)
      rep.violations.push_back("polygon " + std::to_string(k) + ": edge ratio " + std::to_string(pr.min_edge_ratio) +
                               " < rho0");
    rep.polygons.push_back(pr);
  }
  return rep;
}

}  // namespace nctvem
