#pragma once

// Global dof numbering, assembly of the discrete impedance problem and its direct solve.

#include "nctvem/element.hpp"

#include <Eigen/SparseLU>

#include <chrono>
#include <functional>
#include <fstream>
#include <iomanip>

namespace nctvem {

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DofMap {
  std::vector<int> edge_offset;
  std::vector<int> edge_count;
  std::vector<std::vector<int>> gather;  // per element: local dof -> global dof
  int n = 0;
};

/// Edges in mesh order, basis functions in edge-space order. Interior-edge dofs are
/// shared by both neighbours.
inline DofMap build_dof_map(const PolygonalMesh& mesh, const std::vector<EdgeSpace>& spaces) {
  if (mesh.num_polygons() == 0) throw std::invalid_argument("build_dof_map: empty mesh");
  if (static_cast<int>(spaces.size()) != mesh.num_edges())
    throw std::invalid_argument("build_dof_map: one edge space per mesh edge expected");
  DofMap dm;
  dm.edge_offset.resize(mesh.num_edges());
  dm.edge_count.resize(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    dm.edge_offset[e] = dm.n;
    dm.edge_count[e] = spaces[e].size();
    dm.n += spaces[e].size();
  }
  dm.gather.resize(mesh.num_polygons());
  for (int k = 0; k < mesh.num_polygons(); ++k)
    for (int e : mesh.polygon_edges(k))
      for (int j = 0; j < dm.edge_count[e]; ++j) dm.gather[k].push_back(dm.edge_offset[e] + j);
  return dm;
}

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct SolverStats {
  bool dense = false;
  long nonzeros = 0;
  long factor_nonzeros = 0;
  double relative_residual = std::numeric_limits<double>::quiet_NaN();
  int refinements = 0;
  bool converged = false;
  double solve_ms = 0.0;
};

struct GlobalSystem {
  SparseMatrix matrix;
  SparseMatrix boundary_mass;  // the i kappa boundary part, kept for diagnostics
  CVector rhs;
  CVector solution;
  SolverStats stats;

  int size() const { return static_cast<int>(rhs.size()); }
};

/// Boundary data as a function of (point, outward normal).
using BoundaryData = std::function<Complex(const Vec2&, const Vec2&)>;

/// Scatter-adds local stiffness matrices and boundary contributions. Triplets are
/// merged in a fixed order, so the result is bit-stable for a given element order.
inline GlobalSystem assemble(const PolygonalMesh& mesh, const DofMap& dofs, const std::vector<ElementOperators>& ops,
                             const std::vector<EdgeSpace>& spaces, double kappa, const BoundaryData& g) {
  if (static_cast<int>(ops.size()) != mesh.num_polygons())
    throw std::invalid_argument("assemble: one element operator per polygon expected");
  std::vector<Eigen::Triplet<Complex>> trip, btrip;
  GlobalSystem sys;
  sys.rhs = CVector::Zero(dofs.n);
  for (const auto& op : ops) {
    const auto& gl = dofs.gather[op.element];
    if (op.Ah.rows() != static_cast<Eigen::Index>(gl.size()) || op.Ah.cols() != op.Ah.rows())
      throw std::invalid_argument("assemble: local matrix of element " + std::to_string(op.element) +
                                  " does not match its dof count");
    for (std::size_t i = 0; i < gl.size(); ++i)
      for (std::size_t j = 0; j < gl.size(); ++j) trip.emplace_back(gl[i], gl[j], op.Ah(i, j));
  }
  for (int e : mesh.boundary_edges()) {
    const int k = mesh.edge_adjacency(e)[0];
    const auto& pe = mesh.polygon_edges(k);
    const int local = static_cast<int>(std::find(pe.begin(), pe.end(), e) - pe.begin());
    const Vec2 n = mesh.outward_normal(k, local);
    const auto bt = build_boundary_terms(spaces[e], kappa, [&](const Vec2& x) { return g ? g(x, n) : Complex(0.0); });
    const int off = dofs.edge_offset[e];
    for (int i = 0; i < dofs.edge_count[e]; ++i) {
      sys.rhs[off + i] += bt.rhs[i];
      for (int j = 0; j < dofs.edge_count[e]; ++j) btrip.emplace_back(off + i, off + j, bt.mass(i, j));
    }
  }
  sys.boundary_mass.resize(dofs.n, dofs.n);
  sys.boundary_mass.setFromTriplets(btrip.begin(), btrip.end());
  trip.insert(trip.end(), btrip.begin(), btrip.end());
  sys.matrix.resize(dofs.n, dofs.n);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  sys.matrix.makeCompressed();
  return sys;
}

inline constexpr int kDenseThreshold = 200;  // sparse LU is already faster above this size

/// Direct solve (dense LU up to kDenseThreshold unknowns, sparse LU beyond) with up to
/// three steps of iterative refinement. A residual above 1e-10 is reported in the stats
/// (converged = false); a failed factorization or non-finite solution throws.
inline const CVector& solve(GlobalSystem& sys, double target_residual = 1e-10) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = sys.size();
  auto& st = sys.stats;
  st.nonzeros = sys.matrix.nonZeros();
  const double bnorm = sys.rhs.norm();
  if (bnorm == 0.0) {
    sys.solution = CVector::Zero(n);
    st.relative_residual = 0.0;
    st.converged = true;
    return sys.solution;
  }
  auto refine = [&](auto&& solver) {
    sys.solution = solver(sys.rhs);
    for (st.refinements = 0;; ++st.refinements) {
      if (!sys.solution.allFinite()) throw SolveError("solve: non-finite solution (singular or ill-conditioned system)");
      const CVector r = sys.rhs - sys.matrix * sys.solution;
      st.relative_residual = r.norm() / bnorm;
      if (st.relative_residual <= target_residual || st.refinements == 3) break;
      sys.solution += solver(r);
    }
  };
  if (n <= kDenseThreshold) {
    st.dense = true;
    const CMatrix dense(sys.matrix);
    Eigen::PartialPivLU<CMatrix> lu(dense);
    const double rc = lu.rcond();
    if (!(rc > 0.0) || !std::isfinite(rc))
      throw SolveError("solve: singular matrix (reciprocal condition estimate " + std::to_string(rc) + ")");
    st.factor_nonzeros = static_cast<long>(n) * n;
    refine([&](const CVector& b) -> CVector { return lu.solve(b); });
  } else {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(sys.matrix);
    lu.factorize(sys.matrix);
    if (lu.info() != Eigen::Success) throw SolveError("solve: sparse LU failed: " + lu.lastErrorMessage());
    st.factor_nonzeros = lu.nnzL() + lu.nnzU();
    refine([&](const CVector& b) -> CVector { return lu.solve(b); });
  }
  st.converged = st.relative_residual <= target_residual;
  st.solve_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return sys.solution;
}

/// Matrix Market coordinate dump (complex general) of the system matrix, with the
/// right-hand side in `<path>.rhs` as a complex array.
inline void write_matrix_market(const GlobalSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << sys.matrix.rows() << ' ' << sys.matrix.cols() << ' ' << sys.matrix.nonZeros() << '\n';
  out << std::setprecision(17);
  for (int c = 0; c < sys.matrix.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(sys.matrix, c); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
  std::ofstream rhs(path + ".rhs");
  rhs << "%%MatrixMarket matrix array complex general\n" << sys.rhs.size() << " 1\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < sys.rhs.size(); ++i) rhs << sys.rhs[i].real() << ' ' << sys.rhs[i].imag() << '\n';
}

}  // namespace nctvem
