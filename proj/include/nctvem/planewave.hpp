#pragma once

// Direction sets, bulk plane waves and filtered edge plane-wave trace bases.
//
// Indices are 0-based: direction l lives at dirs[l], and the synthetic constant edge
// function carries index p.

#include "nctvem/geometry.hpp"

#include <stdexcept>
#include <string>

namespace nctvem {

class DirectionSet {
 public:
  /// Equispaced directions d_l = (cos t_l, sin t_l), t_l = offset + 2 pi l / p, p = 2q+1.
  static DirectionSet equispaced(int q, double angle_offset = 0.0) {
    if (q < 2) throw std::invalid_argument("direction set needs q >= 2, got q = " + std::to_string(q));
    const int p = 2 * q + 1;
    std::vector<double> angles(p);
    for (int l = 0; l < p; ++l) angles[l] = angle_offset + 2.0 * kPi * l / p;
    return from_angles(angles);
  }

  /// Arbitrary direction set; no validation beyond a non-empty list, so that
  /// deliberately degenerate sets can be built. Check satisfies_min_angle() before use.
  static DirectionSet from_angles(const std::vector<double>& angles) {
    if (angles.empty()) throw std::invalid_argument("empty direction set");
    DirectionSet s;
    for (double a : angles) s.dirs_.emplace_back(std::cos(a), std::sin(a));
    s.compute_delta();
    return s;
  }

  static DirectionSet from_vectors(const std::vector<Vec2>& dirs) {
    if (dirs.empty()) throw std::invalid_argument("empty direction set");
    DirectionSet s;
    for (const auto& d : dirs) s.dirs_.push_back(d.normalized());
    s.compute_delta();
    return s;
  }

  int p() const { return static_cast<int>(dirs_.size()); }
  int q() const { return (p() - 1) / 2; }
  const Vec2& operator[](int l) const { return dirs_[l]; }
  const std::vector<Vec2>& directions() const { return dirs_; }

  /// Minimum pairwise angle divided by 2 pi / p.
  double delta() const { return delta_; }
  double max_gap() const { return max_gap_; }

  /// (D1): distinct directions and neighbouring gaps strictly below pi.
  bool satisfies_min_angle() const { return delta_ > 0.0 && delta_ <= 1.0 + 1e-12 && max_gap_ < kPi; }

 private:
  void compute_delta() {
    std::vector<double> ang;
    for (const auto& d : dirs_) {
      double a = std::atan2(d.y(), d.x());
      if (a < 0) a += 2.0 * kPi;
      ang.push_back(a);
    }
    std::sort(ang.begin(), ang.end());
    double min_gap = 2.0 * kPi;
    max_gap_ = 0.0;
    for (std::size_t i = 0; i < ang.size(); ++i) {
      const double next = i + 1 < ang.size() ? ang[i + 1] : ang[0] + 2.0 * kPi;
      const double gap = next - ang[i];
      min_gap = std::min(min_gap, gap);
      max_gap_ = std::max(max_gap_, gap);
    }
    if (ang.size() == 1) min_gap = 2.0 * kPi;
    delta_ = min_gap / (2.0 * kPi / static_cast<double>(ang.size()));
    if (delta_ < 1e-12) delta_ = 0.0;
  }

  std::vector<Vec2> dirs_;
  double delta_ = 0.0;
  double max_gap_ = 0.0;
};

inline constexpr double kDefaultOrthTol = 1e-12;

/// Filtered plane-wave trace basis of one edge. Member m is the function
/// s -> exp(i kappa tangential[m] s), s the arclength measured from the midpoint;
/// the synthetic constant has tangential 0.
struct EdgeBasis {
  int edge = -1;
  Vec2 midpoint = Vec2::Zero();
  Vec2 tangent = Vec2::UnitX();
  double length = 0.0;
  int p = 0;                       // size of the direction set the basis was filtered from
  std::vector<int> kept;           // J_e: direction indices, plus p for the synthetic constant
  std::vector<double> tangential;  // d . t per member (0 for the synthetic constant)
  std::vector<int> representative; // per direction: member position of its surviving trace
  bool has_constant = false;
  int constant_member = -1;        // member spanning the constants
  bool synthetic_constant = false;

  int size() const { return static_cast<int>(kept.size()); }

  /// Value of member m at a point x of the edge.
  Complex eval(int m, const Vec2& x, double kappa) const {
    const double s = (x - midpoint).dot(tangent);
    return std::exp(Complex(0.0, kappa * tangential[m] * s));
  }
};

/// Filtering process: among directions with equal tangential component (within tol_orth)
/// only the lowest index survives; the constant is appended unless a surviving direction
/// is orthogonal to the edge.
inline EdgeBasis filter_edge(const Vec2& a, const Vec2& b, const DirectionSet& dirs,
                             double tol_orth = kDefaultOrthTol, int edge_id = -1) {
  const double len = (b - a).norm();
  if (!(len > 0.0)) throw std::invalid_argument("filter_edge: zero-length edge");
  EdgeBasis eb;
  eb.edge = edge_id;
  eb.midpoint = 0.5 * (a + b);
  eb.tangent = (b - a) / len;
  eb.length = len;
  eb.p = dirs.p();
  eb.representative.assign(dirs.p(), -1);
  for (int l = 0; l < dirs.p(); ++l) {
    const double tau = dirs[l].dot(eb.tangent);
    int rep = -1;
    for (int m = 0; m < eb.size(); ++m)
      if (std::abs(tau - eb.tangential[m]) <= tol_orth) {
        rep = m;
        break;
      }
    if (rep < 0) {
      rep = eb.size();
      eb.kept.push_back(l);
      eb.tangential.push_back(tau);
    }
    eb.representative[l] = rep;
  }
  for (int m = 0; m < eb.size(); ++m)
    if (std::abs(eb.tangential[m]) <= tol_orth) {
      eb.has_constant = true;
      eb.constant_member = m;
      break;
    }
  if (!eb.has_constant) {
    eb.constant_member = eb.size();
    eb.kept.push_back(dirs.p());
    eb.tangential.push_back(0.0);
    eb.has_constant = true;
    eb.synthetic_constant = true;
  }
  return eb;
}

/// Plane wave exp(i kappa d_l . (x - center)) attached to an element.
struct BulkWave {
  int element = -1;
  int direction = 0;
  Vec2 center = Vec2::Zero();
};

inline Complex eval_bulk(const BulkWave& w, const DirectionSet& dirs, double kappa, const Vec2& x) {
  return std::exp(Complex(0.0, kappa * dirs[w.direction].dot(x - w.center)));
}

inline Vec2 direction_of(const BulkWave& w, const DirectionSet& dirs) { return dirs[w.direction]; }

struct TraceCoefficient {
  int member;     // position in the edge basis of the filtering representative
  Complex phase;  // unimodular factor
};

/// The trace of a bulk wave on an edge equals phase * (edge basis member).
inline TraceCoefficient trace_coefficient(const BulkWave& w, const EdgeBasis& eb, const DirectionSet& dirs,
                                          double kappa) {
  const int member = eb.representative.at(w.direction);
  return {member, std::exp(Complex(0.0, kappa * dirs[w.direction].dot(eb.midpoint - w.center)))};
}

}  // namespace nctvem
