#pragma once

// One-call setup of the full discretization on a mesh: edge spaces, element operators
// and the dof map.

#include "nctvem/system.hpp"

namespace nctvem {

struct Discretization {
  DirectionSet dirs = DirectionSet::equispaced(2);
  double kappa = 1.0;
  ElementOptions options;
  std::vector<EdgeSpace> spaces;
  std::vector<ElementOperators> ops;
  DofMap dofs;

  int degenerate_elements = 0;
  int negative_weight_elements = 0;
  int elements_above_projector_threshold = 0;
  double min_rcond = std::numeric_limits<double>::infinity();
};

inline Discretization discretize(const PolygonalMesh& mesh, const DirectionSet& dirs, double kappa,
                                 const ElementOptions& opts = {}) {
  Discretization d;
  d.dirs = dirs;
  d.kappa = kappa;
  d.options = opts;
  d.spaces = build_edge_spaces(mesh, dirs, kappa, opts);
  d.dofs = build_dof_map(mesh, d.spaces);
  d.ops.reserve(mesh.num_polygons());
  for (int k = 0; k < mesh.num_polygons(); ++k) {
    d.ops.push_back(build_element(mesh, k, d.spaces, dirs, kappa, opts));
    const auto& op = d.ops.back();
    d.degenerate_elements += op.degenerate;
    d.negative_weight_elements += op.negative_weights;
    d.elements_above_projector_threshold += !op.check.pass_proj;
    d.min_rcond = std::min(d.min_rcond, op.check.rcond);
  }
  return d;
}

inline GlobalSystem assemble(const PolygonalMesh& mesh, const Discretization& d, const BoundaryData& g) {
  return assemble(mesh, d.dofs, d.ops, d.spaces, d.kappa, g);
}

/// Local dof vector of element k gathered from a global vector.
inline CVector gather(const DofMap& dofs, int k, const CVector& global) {
  const auto& gl = dofs.gather[k];
  CVector x(gl.size());
  for (std::size_t i = 0; i < gl.size(); ++i) x[i] = global[gl[i]];
  return x;
}

}  // namespace nctvem
