#pragma once

// Polygonal mesh with derived edge topology, plus the plain-text mesh format:
//
//   nv np
//   x y            (nv lines)
//   m i1 ... im    (np lines, 0-based vertex indices, counter-clockwise)

#include "nctvem/geometry.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace nctvem {

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge with canonical orientation v0 < v1.
struct Edge {
  int v0;
  int v1;
};

class PolygonalMesh {
 public:
  PolygonalMesh() = default;

  /// Builds edges and adjacency and validates every mesh invariant.
  /// Throws MeshError naming the offending polygon or edge.
  static PolygonalMesh from_polygons(std::vector<Vec2> vertices, std::vector<std::vector<int>> polygons) {
    PolygonalMesh m;
    m.vertices_ = std::move(vertices);
    m.polygons_ = std::move(polygons);
    m.build_topology();
    return m;
  }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& polygons() const { return polygons_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& boundary_edges() const { return boundary_edges_; }

  /// Adjacent polygons of an edge; the second entry is -1 on the boundary.
  const std::array<int, 2>& edge_adjacency(int e) const { return adjacency_[e]; }
  bool is_boundary(int e) const { return adjacency_[e][1] < 0; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_polygons() const { return static_cast<int>(polygons_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Edge ids of polygon k in traversal order: local edge i joins local vertices i and i+1.
  const std::vector<int>& polygon_edges(int k) const { return polygon_edges_[k]; }

  /// +1 when polygon k traverses local edge i along the canonical orientation, -1 otherwise.
  int edge_sign(int k, int local) const { return edge_signs_[k][local]; }

  std::vector<Vec2> polygon_points(int k) const {
    std::vector<Vec2> pts;
    pts.reserve(polygons_[k].size());
    for (int v : polygons_[k]) pts.push_back(vertices_[v]);
    return pts;
  }

  Vec2 edge_start(int e) const { return vertices_[edges_[e].v0]; }
  Vec2 edge_end(int e) const { return vertices_[edges_[e].v1]; }
  Vec2 edge_midpoint(int e) const { return 0.5 * (edge_start(e) + edge_end(e)); }
  double edge_length(int e) const { return (edge_end(e) - edge_start(e)).norm(); }
  Vec2 edge_tangent(int e) const { return (edge_end(e) - edge_start(e)).normalized(); }

  /// Outward unit normal of edge `local` of polygon k.
  Vec2 outward_normal(int k, int local) const {
    const int e = polygon_edges_[k][local];
    const Vec2 t = edge_tangent(e) * static_cast<double>(edge_signs_[k][local]);
    return {t.y(), -t.x()};
  }

  double polygon_area(int k) const { return area(polygon_points(k)); }
  double polygon_diameter(int k) const { return diameter(polygon_points(k)); }

  /// Global mesh size h = max diameter.
  double mesh_size() const {
    double h = 0.0;
    for (int k = 0; k < num_polygons(); ++k) h = std::max(h, polygon_diameter(k));
    return h;
  }

  double total_area() const {
    double a = 0.0;
    for (int k = 0; k < num_polygons(); ++k) a += polygon_area(k);
    return a;
  }

  /// Area enclosed by the boundary edges, oriented by their owning polygons.
  double boundary_enclosed_area() const {
    double twice = 0.0;
    for (int e : boundary_edges_) {
      const int k = adjacency_[e][0];
      const auto& pe = polygon_edges_[k];
      const int local = static_cast<int>(std::find(pe.begin(), pe.end(), e) - pe.begin());
      Vec2 a = edge_start(e), b = edge_end(e);
      if (edge_signs_[k][local] < 0) std::swap(a, b);
      twice += cross(a, b);
    }
    return 0.5 * twice;
  }

 private:
  void build_topology() {
    const int nv = num_vertices();
    if (polygons_.empty()) throw MeshError("mesh has no polygons");
    std::map<std::pair<int, int>, int> edge_index;
    polygon_edges_.assign(polygons_.size(), {});
    edge_signs_.assign(polygons_.size(), {});
    for (int k = 0; k < num_polygons(); ++k) {
      const auto& poly = polygons_[k];
      const int m = static_cast<int>(poly.size());
      if (m < 3) throw MeshError("polygon " + std::to_string(k) + " has fewer than 3 vertices");
      for (int v : poly)
        if (v < 0 || v >= nv)
          throw MeshError("polygon " + std::to_string(k) + " references missing vertex " + std::to_string(v));
      const auto pts = polygon_points(k);
      if (signed_area(pts) <= 0.0)
        throw MeshError("polygon " + std::to_string(k) + " is not counter-clockwise (or has zero area)");
      if (!is_simple(pts)) throw MeshError("polygon " + std::to_string(k) + " is not simple");
      for (int i = 0; i < m; ++i) {
        const int a = poly[i], b = poly[(i + 1) % m];
        const auto key = std::minmax(a, b);
        auto [it, inserted] = edge_index.try_emplace({key.first, key.second}, static_cast<int>(edges_.size()));
        if (inserted) {
          edges_.push_back({key.first, key.second});
          adjacency_.push_back({k, -1});
        } else {
          auto& adj = adjacency_[it->second];
          if (adj[1] >= 0 || adj[0] == k)
            throw MeshError("edge " + std::to_string(it->second) + " (" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + ") has more than two adjacent polygon sides");
          adj[1] = k;
        }
        polygon_edges_[k].push_back(it->second);
        edge_signs_[k].push_back(a < b ? 1 : -1);
      }
    }
    for (int e = 0; e < num_edges(); ++e) {
      if (adjacency_[e][1] < 0) {
        boundary_edges_.push_back(e);
        continue;
      }
      // Interior edges must be traversed in opposite directions by their two polygons.
      int signs = 0;
      for (int side = 0; side < 2; ++side) {
        const int k = adjacency_[e][side];
        const auto& pe = polygon_edges_[k];
        const auto local = std::find(pe.begin(), pe.end(), e) - pe.begin();
        signs += edge_signs_[k][local];
      }
      if (signs != 0)
        throw MeshError("interior edge " + std::to_string(e) + " has the same orientation in both polygons " +
                        std::to_string(adjacency_[e][0]) + " and " + std::to_string(adjacency_[e][1]));
    }
    const double a = total_area();
    const double enclosed = boundary_enclosed_area();
    if (std::abs(a - enclosed) > 1e-12 * std::max(a, 1e-300))
      throw MeshError("polygon areas do not tile the domain enclosed by the boundary edges");
  }

  std::vector<Vec2> vertices_;
  std::vector<std::vector<int>> polygons_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 2>> adjacency_;
  std::vector<int> boundary_edges_;
  std::vector<std::vector<int>> polygon_edges_;
  std::vector<std::vector<int>> edge_signs_;
};

/// Parses the mesh text format. Errors carry the 1-based line number.
inline PolygonalMesh read_mesh(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return;
    }
    throw MeshError("line " + std::to_string(line_no + 1) + ": unexpected end of file, expected " + what);
  };
  auto fail = [&](const std::string& msg) { throw MeshError("line " + std::to_string(line_no) + ": " + msg); };

  next_line("header 'nv np'");
  long nv = -1, np = -1;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> np) || nv < 3 || np < 1) fail("bad header, expected 'nv np' with nv >= 3 and np >= 1");
  }
  std::vector<Vec2> vertices;
  vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    next_line("vertex 'x y'");
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y) || !std::isfinite(x) || !std::isfinite(y)) fail("bad vertex line, expected 'x y'");
    vertices.emplace_back(x, y);
  }
  std::vector<std::vector<int>> polygons;
  polygons.reserve(np);
  for (long k = 0; k < np; ++k) {
    next_line("polygon 'm i1 ... im'");
    std::istringstream ss(line);
    int m;
    if (!(ss >> m) || m < 3) fail("bad polygon line, expected vertex count m >= 3");
    std::vector<int> poly(m);
    for (int& v : poly)
      if (!(ss >> v)) fail("polygon line has fewer than " + std::to_string(m) + " indices");
    polygons.push_back(std::move(poly));
  }
  return PolygonalMesh::from_polygons(std::move(vertices), std::move(polygons));
}

inline PolygonalMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

inline void write_mesh(std::ostream& out, const PolygonalMesh& mesh) {
  out.precision(17);
  out << mesh.num_vertices() << ' ' << mesh.num_polygons() << '\n';
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << '\n';
  for (const auto& poly : mesh.polygons()) {
    out << poly.size();
    for (int v : poly) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace nctvem
