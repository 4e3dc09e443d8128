#include "nctvem/error_norms.hpp"
#include "nctvem/voronoi.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace nctvem;

namespace {

struct Problem {
  PolygonalMesh mesh;
  Discretization d;
  ExactSolution u;
  GlobalSystem sys;
};

Problem solve_hankel(int cells, double kappa, int q, std::uint64_t seed) {
  Problem p{generate_voronoi_lloyd(cells, 50, seed), {}, ExactSolution::hankel({-0.25, 0}, kappa), {}};
  p.d = discretize(p.mesh, DirectionSet::equispaced(q), kappa);
  p.sys = assemble(p.mesh, p.d, [&](const Vec2& x, const Vec2& n) { return impedance_data(p.u, x, n, kappa); });
  solve(p.sys);
  return p;
}

}  // namespace

TEST(ProjectedError, ZeroSolutionGivesOne) {
  const auto m = generate_voronoi_lloyd(10, 10, 1);
  const auto d = discretize(m, DirectionSet::equispaced(3), 6.0);
  const auto u = ExactSolution::hankel({-0.25, 0}, 6.0);
  EXPECT_NEAR(projected_l2_error(m, d, CVector::Zero(d.dofs.n), u).relative, 1.0, 1e-14);
  EXPECT_NEAR(projected_l2_error(m, d, CVector::Zero(d.dofs.n), u, ErrorNorm::h1_seminorm).relative, 1.0, 1e-14);
}

TEST(ProjectedError, ExactNormAgainstOracle) {
  const auto m = generate_voronoi_lloyd(6, 10, 2);
  const double kappa = 12.0;
  const auto d = discretize(m, DirectionSet::equispaced(2), kappa);
  const auto u = ExactSolution::hankel({-0.25, 0}, kappa);
  double ref = 0;
  for (int k = 0; k < m.num_polygons(); ++k) {
    const auto pts = m.polygon_points(k);
    ref += oracle::polygon(pts, centroid(pts), [&](const Vec2& x) { return Complex(std::norm(u.value(x))); }, 30, 2).real();
  }
  const auto r = projected_l2_error(m, d, CVector::Zero(d.dofs.n), u);
  EXPECT_NEAR(r.exact_norm, std::sqrt(ref), 1e-12 * std::sqrt(ref));
}

TEST(ProjectedError, PhaseInvariant) {
  auto p = solve_hankel(20, 10.0, 3, 3);
  const double e0 = projected_l2_error(p.mesh, p.d, p.sys.solution, p.u).relative;
  // rotate u and the dofs by the same phase and recompute the error with the oracle rule
  const Complex ph = std::exp(Complex(0, 0.7));
  const auto& ops = p.d.ops;
  double err2 = 0, ref2 = 0;
  for (const auto& op : ops) {
    const auto pts = p.mesh.polygon_points(op.element);
    const CVector c = op.Pi * (ph * gather(p.d.dofs, op.element, p.sys.solution));
    err2 += oracle::polygon(pts, centroid(pts), [&](const Vec2& x) {
      Complex v = 0;
      for (int l = 0; l < p.d.dirs.p(); ++l) v += c[l] * std::exp(Complex(0, 10.0 * p.d.dirs[l].dot(x - op.center)));
      return Complex(std::norm(ph * p.u.value(x) - v));
    }, 24).real();
    ref2 += oracle::polygon(pts, centroid(pts), [&](const Vec2& x) { return Complex(std::norm(p.u.value(x))); }, 24).real();
  }
  EXPECT_NEAR(std::sqrt(err2 / ref2), e0, 1e-8 * e0);
}

TEST(ProjectedError, PlaneWavePatch) {
  const auto m = generate_voronoi_lloyd(25, 50, 7);
  const double kappa = 0.5 / m.mesh_size();
  const auto dirs = DirectionSet::equispaced(4);
  const auto d = discretize(m, dirs, kappa);
  const auto u = ExactSolution::planewave(dirs[3], kappa);
  auto sys = assemble(m, d, [&](const Vec2& x, const Vec2& n) { return impedance_data(u, x, n, kappa); });
  solve(sys);
  EXPECT_LT(projected_l2_error(m, d, sys.solution, u).relative, 1e-6);
  EXPECT_LT(projected_l2_error(m, d, sys.solution, u, ErrorNorm::h1_seminorm).relative, 1e-6);
}

TEST(Interpolation, PlaneWaveDofsAreDColumns) {
  const auto m = generate_voronoi_lloyd(8, 20, 4);
  const double kappa = 7.0;
  const auto dirs = DirectionSet::equispaced(3);
  const auto d = discretize(m, dirs, kappa);
  const auto u = ExactSolution::planewave(dirs[2], kappa);
  const CVector x = interpolation_dofs(u, m, d);
  // reduced dofs are T^H applied to member moments: rounding grows with max |T|
  double tmax = 1.0;
  for (const auto& s : d.spaces) tmax = std::max(tmax, s.to_members.cwiseAbs().maxCoeff());
  for (const auto& op : d.ops) {
    // u = exp(i kappa d.x_K) w_2 on element K
    const Complex c = std::exp(Complex(0, kappa * dirs[2].dot(op.center)));
    EXPECT_LT((gather(d.dofs, op.element, x) - c * op.D.col(2)).cwiseAbs().maxCoeff(), 1e3 * 2.3e-16 * tmax);
  }
  EXPECT_LT(projected_l2_error(m, d, x, u).relative, 1e-8);
}

TEST(Interpolation, ConstantDofIsEdgeAverage) {
  ElementOptions o;
  o.svd_filter = false;
  const auto m = generate_voronoi_lloyd(5, 10, 5);
  const double kappa = 4.0;
  const auto d = discretize(m, DirectionSet::equispaced(2), kappa, o);
  const auto u = ExactSolution::hankel({-0.25, 0}, kappa);
  const CVector x = interpolation_dofs(u, m, d);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& eb = d.spaces[e].basis;
    const Complex avg = oracle::segment(m.edge_start(e), m.edge_end(e), [&](const Vec2& p) { return u.value(p); }, 40) / eb.length;
    EXPECT_LT(std::abs(x[d.dofs.edge_offset[e] + eb.constant_member] - avg), 1e-12);
  }
}

TEST(Interpolation, ComparableToGalerkin) {
  for (int cells : {32, 128}) {
    auto p = solve_hankel(cells, 16.0, 4, 11);
    const double eg = projected_l2_error(p.mesh, p.d, p.sys.solution, p.u).relative;
    const double ei = projected_l2_error(p.mesh, p.d, interpolation_dofs(p.u, p.mesh, p.d), p.u).relative;
    EXPECT_LT(ei, 20 * eg) << cells;
    EXPECT_LT(eg, 1.0);
  }
}
