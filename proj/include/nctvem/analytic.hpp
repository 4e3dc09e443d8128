#pragma once

// Real Bessel functions J0, J1, Y0, Y1 and the exact Helmholtz solutions used for
// verification (Hankel point source, plane wave) with their impedance traces.

#include "nctvem/geometry.hpp"

#include <stdexcept>

namespace nctvem {

struct BesselValues {
  double j0, j1, y0, y1;
};

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Ascending series; accurate to ~1e-12 absolute for x <= 12.
inline BesselValues bessel_series(double x) {
  const double h = 0.5 * x;
  const double q = h * h;
  double t0 = 1.0;  // (-q)^k / (k!)^2
  double t1 = h;    // (x/2) (-q)^k / (k! (k+1)!)
  double j0 = 0.0, j1 = 0.0, s0 = 0.0, s1 = 0.0;
  double hk = 0.0;  // harmonic number H_k
  for (int k = 0; k < 80; ++k) {
    const double hk1 = hk + 1.0 / (k + 1);
    j0 += t0;
    j1 += t1;
    s0 -= hk * t0;         // sum of (-1)^(k+1) H_k q^k / (k!)^2
    s1 += (hk + hk1) * t1; // sum of (H_k + H_{k+1}) (-1)^k (x/2)^(2k+1) / (k!(k+1)!)
    if (k > 2 && std::abs(t0) < 1e-18 && std::abs(t1) < 1e-18) break;
    t0 *= -q / ((k + 1.0) * (k + 1.0));
    t1 *= -q / ((k + 1.0) * (k + 2.0));
    hk = hk1;
  }
  const double lg = std::log(h) + kEulerGamma;
  const double y0 = (2.0 / kPi) * (lg * j0 + s0);
  const double y1 = -2.0 / (kPi * x) + (2.0 / kPi) * lg * j1 - s1 / kPi;
  return {j0, j1, y0, y1};
}

// Hankel asymptotic expansion, truncated at its smallest term.
inline void bessel_asymptotic(int nu, double x, double& j, double& y) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, qq = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (std::abs(term) >= prev) break;
    prev = std::abs(term);
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) p += sign * term;
    else qq += sign * term;
    if (std::abs(term) < 1e-17) break;
    term *= (mu - (2.0 * k + 1) * (2.0 * k + 1)) / ((k + 1.0) * 8.0 * x);
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double f = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi), s = std::sin(chi);
  j = f * (p * c - qq * s);
  y = f * (p * s + qq * c);
}

}  // namespace detail

inline constexpr double kBesselSwitch = 12.0;

/// J0, J1, Y0, Y1 at x > 0.
inline BesselValues bessel_j0y0j1y1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_j0y0j1y1: argument must be positive (Y is singular at 0)");
  if (x < kBesselSwitch) return detail::bessel_series(x);
  BesselValues v{};
  detail::bessel_asymptotic(0, x, v.j0, v.y0);
  detail::bessel_asymptotic(1, x, v.j1, v.y1);
  return v;
}

struct ValueGradient {
  Complex value;
  Eigen::Vector2cd gradient;
};

class ExactSolution {
 public:
  enum class Kind { hankel, planewave };

  /// H0^(1)(kappa |x - source|).
  static ExactSolution hankel(const Vec2& source, double kappa) {
    ExactSolution s;
    s.kind_ = Kind::hankel;
    s.point_ = source;
    s.kappa_ = kappa;
    return s;
  }

  /// exp(i kappa d . x).
  static ExactSolution planewave(const Vec2& direction, double kappa) {
    ExactSolution s;
    s.kind_ = Kind::planewave;
    s.point_ = direction.normalized();
    s.kappa_ = kappa;
    return s;
  }

  Kind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  const Vec2& source() const { return point_; }
  const Vec2& direction() const { return point_; }

  ValueGradient eval(const Vec2& x) const {
    if (kind_ == Kind::planewave) {
      const Complex v = std::exp(Complex(0.0, kappa_ * point_.dot(x)));
      return {v, Complex(0.0, kappa_) * v * point_.cast<Complex>()};
    }
    const Vec2 rel = x - point_;
    const double r = rel.norm();
    if (!(r > 0.0)) throw std::domain_error("Hankel solution evaluated at its source point");
    const auto b = bessel_j0y0j1y1(kappa_ * r);
    const Complex h0(b.j0, b.y0), h1(b.j1, b.y1);
    return {h0, (-kappa_ * h1 / r) * rel.cast<Complex>()};
  }

  Complex value(const Vec2& x) const { return eval(x).value; }

 private:
  Kind kind_ = Kind::planewave;
  Vec2 point_ = Vec2::UnitX();
  double kappa_ = 1.0;
};

inline ValueGradient eval_exact(const ExactSolution& sol, const Vec2& x) { return sol.eval(x); }

/// Impedance trace g = grad u . n + i kappa u.
inline Complex impedance_data(const ExactSolution& sol, const Vec2& x, const Vec2& normal, double kappa) {
  const auto vg = sol.eval(x);
  return vg.gradient[0] * normal.x() + vg.gradient[1] * normal.y() + Complex(0.0, kappa) * vg.value;
}

}  // namespace nctvem
