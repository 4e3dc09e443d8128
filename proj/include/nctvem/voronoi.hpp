#pragma once

// Bounded Voronoi tessellations of a rectangle with Lloyd relaxation.

#include "nctvem/mesh.hpp"

#include <cstdint>
#include <numeric>
#include <random>

namespace nctvem {

struct Rectangle {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{1.0, 1.0};

  double width() const { return hi.x() - lo.x(); }
  double height() const { return hi.y() - lo.y(); }
  double diagonal() const { return (hi - lo).norm(); }
  std::vector<Vec2> corners() const { return {lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}}; }
};

namespace detail {

// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::vector<Vec2> voronoi_cell(const std::vector<Vec2>& seeds, std::size_t i, const Rectangle& domain,
                                      const std::vector<std::size_t>& by_distance, double merge_tol) {
  std::vector<Vec2> cell = domain.corners();
  double radius = 0.0;
  for (const auto& v : cell) radius = std::max(radius, (v - seeds[i]).norm());
  for (std::size_t j : by_distance) {
    if (j == i) continue;
    const Vec2 diff = seeds[j] - seeds[i];
    // Bisectors farther than the current cell radius cannot cut the cell.
    if (0.5 * diff.norm() > radius) break;
    const Vec2 mid = 0.5 * (seeds[i] + seeds[j]);
    cell = clip(cell, HalfPlane{diff, diff.dot(mid)}, merge_tol);
    radius = 0.0;
    for (const auto& v : cell) radius = std::max(radius, (v - seeds[i]).norm());
  }
  return cell;
}

// Union-find clustering of points closer than tol (sweep over x-sorted order).
inline std::vector<int> cluster_points(const std::vector<Vec2>& pts, double tol) {
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return pts[a].x() < pts[b].x() || (pts[a].x() == pts[b].x() && a < b);
  });
  for (std::size_t s = 0; s < order.size(); ++s) {
    for (std::size_t t = s + 1; t < order.size() && pts[order[t]].x() - pts[order[s]].x() <= tol; ++t) {
      if ((pts[order[t]] - pts[order[s]]).norm() <= tol) {
        const int ra = find(order[s]), rb = find(order[t]);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<int> root(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) root[i] = find(static_cast<int>(i));
  return root;
}

}  // namespace detail

/// Voronoi diagram of the given seeds clipped to `domain`, as a conforming polygonal mesh
/// (cell k belongs to seed k). Seeds are shifted by at most 1e-12 * diam, keyed to
/// `rng_seed`, so that cocircular configurations do not produce spurious slivers.
inline PolygonalMesh voronoi_mesh(std::vector<Vec2> seeds, const Rectangle& domain, std::uint64_t rng_seed = 0) {
  if (seeds.empty()) throw MeshError("voronoi_mesh: no seeds");
  if (!(domain.width() > 0.0 && domain.height() > 0.0)) throw MeshError("voronoi_mesh: degenerate domain");
  const double diam = domain.diagonal();
  const double merge_tol = 1e-9 * diam;
  {
    std::mt19937_64 jitter(rng_seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& s : seeds) {
      s.x() += 1e-12 * diam * (2.0 * detail::unit_uniform(jitter) - 1.0);
      s.y() += 1e-12 * diam * (2.0 * detail::unit_uniform(jitter) - 1.0);
      s = s.cwiseMax(domain.lo).cwiseMin(domain.hi);
    }
  }

  std::vector<std::vector<Vec2>> cells(seeds.size());
  std::vector<std::size_t> order(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = (seeds[a] - seeds[i]).squaredNorm(), db = (seeds[b] - seeds[i]).squaredNorm();
      return da < db || (da == db && a < b);
    });
    cells[i] = detail::voronoi_cell(seeds, i, domain, order, merge_tol);
  }

  // Merge the independently computed cell corners into shared vertices.
  std::vector<Vec2> raw;
  for (const auto& c : cells) raw.insert(raw.end(), c.begin(), c.end());
  const auto root = detail::cluster_points(raw, merge_tol);
  std::vector<int> vertex_of_root(raw.size(), -1);
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> polygons;
  std::size_t offset = 0;
  for (const auto& c : cells) {
    std::vector<int> poly;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const int r = root[offset + j];
      if (vertex_of_root[r] < 0) {
        vertex_of_root[r] = static_cast<int>(vertices.size());
        vertices.push_back(raw[r]);
      }
      const int v = vertex_of_root[r];
      if (poly.empty() || poly.back() != v) poly.push_back(v);
    }
    while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
    offset += c.size();
    polygons.push_back(std::move(poly));
  }
  return PolygonalMesh::from_polygons(std::move(vertices), std::move(polygons));
}

/// Random seeds in `domain` followed by `lloyd_iters` centroid-relaxation sweeps.
/// Bit-reproducible for a fixed rng_seed.
inline PolygonalMesh generate_voronoi_lloyd(int n_seeds, int lloyd_iters, std::uint64_t rng_seed,
                                            const Rectangle& domain = {}) {
  if (n_seeds < 1) throw MeshError("generate_voronoi_lloyd: n_seeds must be >= 1");
  std::mt19937_64 rng(rng_seed);
  std::vector<Vec2> seeds(n_seeds);
  for (auto& s : seeds) {
    const double u = detail::unit_uniform(rng);
    const double v = detail::unit_uniform(rng);
    s = {domain.lo.x() + u * domain.width(), domain.lo.y() + v * domain.height()};
  }
  PolygonalMesh mesh = voronoi_mesh(seeds, domain, rng_seed);
  for (int it = 0; it < lloyd_iters; ++it) {
    for (int k = 0; k < mesh.num_polygons(); ++k) seeds[k] = centroid(mesh.polygon_points(k));
    mesh = voronoi_mesh(seeds, domain, rng_seed + static_cast<std::uint64_t>(it) + 1);
  }
  return mesh;
}

}  // namespace nctvem
