#pragma once

// Local Trefftz virtual element machinery on one polygon: edge trace spaces, degrees of
// freedom, the plane-wave projector, the stabilization and the local discrete form.
//
// Conventions. Plane waves w_l(x) = exp(i kappa d_l . (x - x_K)) with x_K the element
// centroid. The sesquilinear form a^K(u, v) is linear in u and antilinear in v, so for
// plane-wave coefficient vectors c_u, c_v: a^K(u, v) = c_v^H G c_u with
// G(l, m) = a^K(w_m, w_l). Local dof i of element K is (edge e, basis function k of e).

#include "nctvem/mesh.hpp"
#include "nctvem/planewave.hpp"
#include "nctvem/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <stdexcept>
#include <string>

namespace nctvem {

class ElementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StabilizationKind { d_recipe, identity };
enum class DegeneratePolicy { error, warn };

struct ElementOptions {
  double sigma = 1.0;
  StabilizationKind stabilization = StabilizationKind::d_recipe;
  double c0 = 1.0;
  double tol_orth = kDefaultOrthTol;
  bool svd_filter = true;
  double svd_tol = 1e-13;
  double rcond_min = 1e-14;
  DegeneratePolicy degenerate = DegeneratePolicy::error;
  bool enforce_a1 = false;  // throw for elements failing the unisolvency bound
};

// Lower bound for the first Dirichlet eigenvalue times the squared inradius, and the
// projector threshold for convex elements.
inline constexpr double kDirichletConstant = 0.6197;
inline constexpr double kProjectorThreshold = 0.5538;

struct AdmissibilityCheck {
  double hk = 0.0;
  bool pass_a1 = false;
  bool pass_proj = false;
  bool convex = true;  // for non-convex elements pass_proj uses the convex threshold
  double rcond = std::numeric_limits<double>::quiet_NaN();
};

inline AdmissibilityCheck check_admissibility(double h, double kappa, bool convex, double c0 = 1.0) {
  AdmissibilityCheck c;
  c.hk = h * kappa;
  c.convex = convex;
  c.pass_a1 = c.hk <= std::sqrt(c0 * kDirichletConstant);
  c.pass_proj = c.hk < kProjectorThreshold;
  return c;
}

inline AdmissibilityCheck check_admissibility(std::span<const Vec2> poly, double kappa, double c0 = 1.0) {
  return check_admissibility(diameter(poly), kappa, is_convex(poly), c0);
}

// ---------------------------------------------------------------------------
// Edge trace spaces
// ---------------------------------------------------------------------------

/// Filtered edge basis together with its Gram matrix and an optional reduction to an
/// orthonormal subset. Reduced function k is chi_k = sum_m T(m, k) w_m; its dof is
/// (1/h) int v conj(chi_k). Without reduction T = R = I.
struct EdgeSpace {
  EdgeBasis basis;
  Eigen::MatrixXd gram;          // M(m, n) = int_e w_n conj(w_m) ds (real: edge-centred waves)
  CMatrix to_members;            // T (p_e x r)
  CMatrix from_reduced;          // R (p_e x r): member dofs of a function given its reduced dofs
  CMatrix reduced_gram_inverse;  // (T^H M T)^{-1}
  double gram_rcond = 1.0;
  bool reduced = false;

  int size() const { return static_cast<int>(reduced_gram_inverse.rows()); }
  int members() const { return basis.size(); }

  /// L2(e) projection coefficients (reduced basis) of a function given its reduced dofs.
  CVector project(const CVector& dofs) const { return basis.length * (reduced_gram_inverse * dofs); }
};

/// Closed-form edge Gram matrix of a filtered basis.
inline Eigen::MatrixXd edge_gram(const EdgeBasis& eb, double kappa) {
  const int n = eb.size();
  Eigen::MatrixXd m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const double beta = 0.5 * kappa * (eb.tangential[b] - eb.tangential[a]) * eb.length;
      m(a, b) = m(b, a) = eb.length * sinc(beta);
    }
  return m;
}

/// Edge projection operator. With `svd_filter` the basis is replaced by the eigenvectors of
/// the Gram matrix whose eigenvalues exceed svd_tol * max, scaled to be L2(e)-orthonormal.
inline EdgeSpace build_edge_projection(const EdgeBasis& eb, double kappa, bool svd_filter = false,
                                       double svd_tol = 1e-13) {
  EdgeSpace es;
  es.basis = eb;
  es.gram = edge_gram(eb, kappa);
  const int n = eb.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(es.gram);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const double lmax = lam.maxCoeff();
  es.gram_rcond = std::max(lam.minCoeff(), 0.0) / lmax;
  if (!svd_filter) {
    es.to_members = CMatrix::Identity(n, n);
    es.from_reduced = CMatrix::Identity(n, n);
    es.reduced_gram_inverse = es.gram.fullPivLu().inverse().cast<Complex>();
    return es;
  }
  std::vector<int> keep;
  for (int i = n - 1; i >= 0; --i)
    if (lam[i] > svd_tol * lmax) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  es.reduced = r < n;
  Eigen::MatrixXd t(n, r);
  for (int k = 0; k < r; ++k) t.col(k) = eig.eigenvectors().col(keep[k]) / std::sqrt(lam[keep[k]]);
  es.to_members = t.cast<Complex>();
  es.from_reduced = (es.gram * t).cast<Complex>();
  es.reduced_gram_inverse = CMatrix::Identity(r, r);
  return es;
}

inline std::vector<EdgeSpace> build_edge_spaces(const PolygonalMesh& mesh, const DirectionSet& dirs, double kappa,
                                                const ElementOptions& opts = {}) {
  std::vector<EdgeSpace> spaces;
  spaces.reserve(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto eb = filter_edge(mesh.edge_start(e), mesh.edge_end(e), dirs, opts.tol_orth, e);
    spaces.push_back(build_edge_projection(eb, kappa, opts.svd_filter, opts.svd_tol));
  }
  return spaces;
}

// ---------------------------------------------------------------------------
// Local operators
// ---------------------------------------------------------------------------

struct LocalDofSet {
  int element = -1;
  std::vector<std::pair<int, int>> dofs;  // (edge id, index in that edge's space)
  std::vector<int> edge_offset;           // first local dof of each local edge

  int size() const { return static_cast<int>(dofs.size()); }
};

inline LocalDofSet build_local_dofs(const PolygonalMesh& mesh, int k, const std::vector<EdgeSpace>& spaces) {
  LocalDofSet ds;
  ds.element = k;
  for (int e : mesh.polygon_edges(k)) {
    ds.edge_offset.push_back(ds.size());
    for (int j = 0; j < spaces[e].size(); ++j) ds.dofs.emplace_back(e, j);
  }
  return ds;
}

/// G(l, m) = a^K(w_m, w_l) = kappa^2 (d_m . d_l - 1) int_K exp(i kappa (d_m - d_l) . (x - x_K)) dx.
/// Hermitian with an exactly zero diagonal.
inline CMatrix build_gram(std::span<const Vec2> poly, const Vec2& center, const DirectionSet& dirs, double kappa) {
  std::vector<Vec2> local(poly.begin(), poly.end());
  for (auto& x : local) x -= center;
  const int p = dirs.p();
  CMatrix g = CMatrix::Zero(p, p);
  for (int l = 0; l < p; ++l)
    for (int m = l + 1; m < p; ++m) {
      const double c = kappa * kappa * (dirs[m].dot(dirs[l]) - 1.0);
      g(l, m) = c * polygon_osc_integral(local, dirs[m] - dirs[l], kappa);
      g(m, l) = std::conj(g(l, m));
    }
  return g;
}

struct DofCoupling {
  CMatrix B;  // B(l, i) = a^K(phi_i, w_l)
  CMatrix D;  // D(i, m) = dof_i(w_m)
};

/// Boundary representation of a^K(phi_i, w_l) through integration by parts, and the dofs
/// of every bulk plane wave. Both in closed form.
inline DofCoupling build_dof_coupling(const PolygonalMesh& mesh, int k, const Vec2& center,
                                      const std::vector<EdgeSpace>& spaces, const DirectionSet& dirs,
                                      double kappa) {
  const auto& edges = mesh.polygon_edges(k);
  const int p = dirs.p();
  int nfull = 0, nred = 0;
  for (int e : edges) {
    nfull += spaces[e].members();
    nred += spaces[e].size();
  }
  CMatrix bfull = CMatrix::Zero(p, nfull);
  CMatrix dfull = CMatrix::Zero(nfull, p);
  int off = 0;
  for (int local = 0; local < static_cast<int>(edges.size()); ++local) {
    const auto& eb = spaces[edges[local]].basis;
    const Vec2 n = mesh.outward_normal(k, local);
    for (int l = 0; l < p; ++l) {
      const auto tc = trace_coefficient(BulkWave{k, l, center}, eb, dirs, kappa);
      // conj(grad w_l . n) = conj(i kappa (d_l . n) phase) conj(w_rep) on this edge.
      bfull(l, off + tc.member) = std::conj(Complex(0.0, kappa * dirs[l].dot(n)) * tc.phase) * eb.length;
      const double tau = dirs[l].dot(eb.tangent);
      for (int j = 0; j < eb.size(); ++j)
        dfull(off + j, l) = tc.phase * sinc(0.5 * kappa * (tau - eb.tangential[j]) * eb.length);
    }
    off += eb.size();
  }
  bool any_reduced = false;
  for (int e : edges) any_reduced = any_reduced || spaces[e].reduced || spaces[e].size() != spaces[e].members();
  if (!any_reduced) return {std::move(bfull), std::move(dfull)};

  CMatrix r = CMatrix::Zero(nfull, nred), th = CMatrix::Zero(nred, nfull);
  int fo = 0, ro = 0;
  for (int e : edges) {
    const auto& s = spaces[e];
    r.block(fo, ro, s.members(), s.size()) = s.from_reduced;
    th.block(ro, fo, s.size(), s.members()) = s.to_members.adjoint();
    fo += s.members();
    ro += s.size();
  }
  return {bfull * r, th * dfull};
}

/// Solves G Pi = B. Records the reciprocal condition estimate in `check`.
/// Throws ElementError when G is numerically singular unless the policy is warn.
inline CMatrix build_projector(const CMatrix& g, const CMatrix& b, AdmissibilityCheck& check,
                               const ElementOptions& opts = {}, int element = -1) {
  Eigen::PartialPivLU<CMatrix> lu(g);
  check.rcond = lu.rcond();
  CMatrix pi = lu.solve(b);
  const bool finite = pi.allFinite();
  if (!finite || !(check.rcond >= opts.rcond_min)) {
    if (opts.degenerate == DegeneratePolicy::error || !finite)
      throw ElementError("plane-wave Gram matrix of element " + std::to_string(element) +
                         " is numerically singular (rcond " + std::to_string(check.rcond) +
                         ", h_K*k = " + std::to_string(check.hk) +
                         (check.pass_proj ? ")" : ", above the projector threshold 0.5538)"));
  }
  return pi;
}

struct Stabilization {
  Eigen::VectorXd weights;  // s_i before the sigma scaling
  CMatrix S;
};

/// Diagonal stabilization in dof space. D-recipe weights a^K(Pi phi_i, Pi phi_i)
/// (real, possibly negative), or unit weights.
inline Stabilization build_stabilization(const CMatrix& pi, const CMatrix& g, double sigma,
                                         StabilizationKind kind = StabilizationKind::d_recipe) {
  const int n = static_cast<int>(pi.cols());
  Stabilization st;
  st.weights.resize(n);
  if (kind == StabilizationKind::identity) {
    st.weights.setOnes();
  } else {
    const CMatrix gp = g * pi;
    for (int i = 0; i < n; ++i) st.weights[i] = pi.col(i).dot(gp.col(i)).real();
  }
  st.S = (sigma * st.weights).cast<Complex>().asDiagonal();
  return st;
}

/// Spectrum of S restricted to the dof image of ker(Pi), i.e. the range of I - D Pi.
/// Diagnostic only: the stabilization bounds of the theory are not asserted.
inline Eigen::VectorXd stabilization_kernel_spectrum(const CMatrix& pi, const CMatrix& d, const CMatrix& s) {
  const int n = static_cast<int>(pi.cols());
  const CMatrix comp = CMatrix::Identity(n, n) - d * pi;
  Eigen::ColPivHouseholderQR<CMatrix> qr(comp);
  qr.setThreshold(1e-10);
  const int r = static_cast<int>(qr.rank());
  if (r == 0) return {};
  const CMatrix q = CMatrix(qr.householderQ()).leftCols(r);
  const CMatrix sq = q.adjoint() * s * q;
  return Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (sq + sq.adjoint()), Eigen::EigenvaluesOnly).eigenvalues();
}

/// Ah = Pi^H G Pi + (I - D Pi)^H S (I - D Pi); Ah(i, j) = a_h^K(phi_j, phi_i).
inline CMatrix build_local_stiffness(const CMatrix& pi, const CMatrix& g, const CMatrix& s, const CMatrix& d) {
  const int n = static_cast<int>(pi.cols());
  const CMatrix comp = CMatrix::Identity(n, n) - d * pi;
  const CMatrix ah = pi.adjoint() * g * pi + comp.adjoint() * s * comp;
  return 0.5 * (ah + ah.adjoint());  // Hermitian by construction; remove rounding
}

struct ElementOperators {
  int element = -1;
  Vec2 center = Vec2::Zero();
  double h = 0.0;
  LocalDofSet dofs;
  CMatrix G, B, D, Pi, S, Ah;
  Eigen::VectorXd weights;
  AdmissibilityCheck check;
  bool degenerate = false;
  bool negative_weights = false;
};

inline ElementOperators build_element(const PolygonalMesh& mesh, int k, const std::vector<EdgeSpace>& spaces,
                                      const DirectionSet& dirs, double kappa, const ElementOptions& opts = {}) {
  ElementOperators op;
  op.element = k;
  const auto poly = mesh.polygon_points(k);
  op.center = centroid(poly);
  op.h = diameter(poly);
  op.dofs = build_local_dofs(mesh, k, spaces);
  op.check = check_admissibility(op.h, kappa, is_convex(poly), opts.c0);
  if (opts.enforce_a1 && !op.check.pass_a1)
    throw ElementError("element " + std::to_string(k) + " is not admissible: h_K*k = " + std::to_string(op.check.hk) +
                       " exceeds sqrt(c0 * 0.6197) = " + std::to_string(std::sqrt(opts.c0 * kDirichletConstant)));
  op.G = build_gram(poly, op.center, dirs, kappa);
  auto [b, d] = build_dof_coupling(mesh, k, op.center, spaces, dirs, kappa);
  op.B = std::move(b);
  op.D = std::move(d);
  op.Pi = build_projector(op.G, op.B, op.check, opts, k);
  op.degenerate = !(op.check.rcond >= opts.rcond_min);
  auto st = build_stabilization(op.Pi, op.G, opts.sigma, opts.stabilization);
  op.weights = std::move(st.weights);
  op.S = std::move(st.S);
  op.negative_weights = (op.weights.array() < 0.0).any();
  op.Ah = build_local_stiffness(op.Pi, op.G, op.S, op.D);
  return op;
}

// ---------------------------------------------------------------------------
// Boundary terms
// ---------------------------------------------------------------------------

struct BoundaryTerms {
  CMatrix mass;  // i kappa int (Pi_e phi_j) conj(Pi_e phi_i), indexed (i, j)
  CVector rhs;   // int g conj(Pi_e phi_i)
};

/// Impedance mass and load of one boundary edge, over the dofs of that edge.
/// `g` is evaluated at points of the edge; its moments use Gauss-Legendre with n_points.
template <class G>
BoundaryTerms build_boundary_terms(const EdgeSpace& es, double kappa, G&& g, int n_points = 0) {
  const auto& eb = es.basis;
  const double h = eb.length;
  if (n_points <= 0) n_points = default_edge_points(kappa, h);
  BoundaryTerms bt;
  bt.mass = Complex(0.0, kappa * h * h) * es.reduced_gram_inverse;
  const Vec2 a = eb.midpoint - 0.5 * h * eb.tangent;
  const Vec2 b = eb.midpoint + 0.5 * h * eb.tangent;
  CVector moments(eb.size());
  for (int m = 0; m < eb.size(); ++m)
    moments[m] = edge_quadrature(a, b, [&](const Vec2& x) { return g(x) * std::conj(eb.eval(m, x, kappa)); },
                                 n_points);
  bt.rhs = h * (es.reduced_gram_inverse * (es.to_members.adjoint() * moments));
  return bt;
}

}  // namespace nctvem
