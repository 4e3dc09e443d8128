#pragma once

// Computable error of the projected discrete solution and edge interpolation dofs.

#include "nctvem/analytic.hpp"
#include "nctvem/discretization.hpp"
#include "nctvem/regularity.hpp"

namespace nctvem {

enum class ErrorNorm { l2, h1_seminorm };

struct ErrorResult {
  double relative = 0.0;
  double absolute = 0.0;
  double exact_norm = 0.0;
};

namespace detail {

inline Vec2 quadrature_center(std::span<const Vec2> poly) {
  if (is_convex(poly)) return centroid(poly);
  return audit_polygon(poly).star_center;
}

}  // namespace detail

/// || u - Pi_p u_h || / || u || with Pi_p u_h assembled element by element from the
/// projector and the gathered dofs. The difference is integrated pointwise, so small
/// errors do not suffer from cancellation between ||u||^2 and ||Pi_p u_h||^2.
inline ErrorResult projected_error(const PolygonalMesh& mesh, const std::vector<ElementOperators>& ops,
                                   const DofMap& dofs, const DirectionSet& dirs, double kappa,
                                   const CVector& solution, const ExactSolution& exact,
                                   ErrorNorm norm = ErrorNorm::l2, int degree = 0) {
  double err2 = 0.0, ref2 = 0.0;
  for (const auto& op : ops) {
    const auto poly = mesh.polygon_points(op.element);
    const CVector c = op.Pi * gather(dofs, op.element, solution);
    const int deg = degree > 0 ? degree : default_triangle_degree(kappa, op.h);
    const Vec2 center = detail::quadrature_center(poly);
    double e = 0.0, r = 0.0;
    if (norm == ErrorNorm::l2) {
      e = polygon_quadrature(poly, center, [&](const Vec2& x) {
            Complex ph = 0.0;
            for (int l = 0; l < dirs.p(); ++l) ph += c[l] * std::exp(Complex(0.0, kappa * dirs[l].dot(x - op.center)));
            return std::norm(exact.value(x) - ph);
          }, deg).real();
      r = polygon_quadrature(poly, center, [&](const Vec2& x) { return std::norm(exact.value(x)); }, deg).real();
    } else {
      e = polygon_quadrature(poly, center, [&](const Vec2& x) {
            Eigen::Vector2cd gh = Eigen::Vector2cd::Zero();
            for (int l = 0; l < dirs.p(); ++l)
              gh += (Complex(0.0, kappa) * c[l] * std::exp(Complex(0.0, kappa * dirs[l].dot(x - op.center)))) *
                    dirs[l].cast<Complex>();
            return (exact.eval(x).gradient - gh).squaredNorm();
          }, deg).real();
      r = polygon_quadrature(poly, center, [&](const Vec2& x) { return exact.eval(x).gradient.squaredNorm(); }, deg)
              .real();
    }
    err2 += std::max(e, 0.0);
    ref2 += r;
  }
  ErrorResult res;
  res.absolute = std::sqrt(err2);
  res.exact_norm = std::sqrt(ref2);
  res.relative = res.absolute / res.exact_norm;
  return res;
}

inline ErrorResult projected_l2_error(const PolygonalMesh& mesh, const Discretization& d, const CVector& solution,
                                      const ExactSolution& exact, ErrorNorm norm = ErrorNorm::l2) {
  return projected_error(mesh, d.ops, d.dofs, d.dirs, d.kappa, solution, exact, norm);
}

/// Dofs of the edge interpolant: (1/h_e) int_e u conj(w) ds against each edge basis function.
template <class F>
CVector edge_moments(const EdgeSpace& es, double kappa, F&& u, int n_points = 0) {
  const auto& eb = es.basis;
  if (n_points <= 0) n_points = default_edge_points(kappa, eb.length);
  const Vec2 a = eb.midpoint - 0.5 * eb.length * eb.tangent;
  const Vec2 b = eb.midpoint + 0.5 * eb.length * eb.tangent;
  CVector delta(eb.size());
  for (int m = 0; m < eb.size(); ++m)
    delta[m] = edge_quadrature(a, b, [&](const Vec2& x) { return u(x) * std::conj(eb.eval(m, x, kappa)); }, n_points) /
               eb.length;
  return es.to_members.adjoint() * delta;
}

inline CVector interpolation_dofs(const ExactSolution& exact, const PolygonalMesh& mesh,
                                  const std::vector<EdgeSpace>& spaces, const DofMap& dofs, double kappa) {
  CVector x(dofs.n);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int n_points = std::max(default_edge_points(kappa, spaces[e].basis.length), 40);
    x.segment(dofs.edge_offset[e], dofs.edge_count[e]) =
        edge_moments(spaces[e], kappa, [&](const Vec2& p) { return exact.value(p); }, n_points);
  }
  return x;
}

inline CVector interpolation_dofs(const ExactSolution& exact, const PolygonalMesh& mesh, const Discretization& d) {
  return interpolation_dofs(exact, mesh, d.spaces, d.dofs, d.kappa);
}

}  // namespace nctvem
