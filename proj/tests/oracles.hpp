#pragma once

// Reference computations for the tests, written independently of the library code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using Vec2 = Eigen::Vector2d;
using Complex = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846264338327950288;

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Golub-Welsch: eigenvalues of the Jacobi matrix of the Legendre recurrence.
inline Rule gauss_legendre(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Rule r;
  for (int i = 0; i < n; ++i) {
    r.x.push_back(es.eigenvalues()[i]);
    const double v = es.eigenvectors()(0, i);
    r.w.push_back(2.0 * v * v);
  }
  return r;
}

inline Complex segment(const Vec2& a, const Vec2& b, const std::function<Complex(const Vec2&)>& f, int n) {
  const auto r = gauss_legendre(n);
  Complex s = 0.0;
  for (int i = 0; i < n; ++i) s += r.w[i] * f(0.5 * (a + b) + 0.5 * r.x[i] * (b - a));
  return 0.5 * (b - a).norm() * s;
}

// Collapsed square: x = p0 + u (p1 - p0) + u v (p2 - p1), Jacobian 2|T| u.
inline Complex triangle(const Vec2& p0, const Vec2& p1, const Vec2& p2, const std::function<Complex(const Vec2&)>& f,
                        int n) {
  const auto r = gauss_legendre(n);
  const Vec2 e1 = p1 - p0, e2 = p2 - p1;
  const double jac = std::abs(e1.x() * (p2 - p0).y() - e1.y() * (p2 - p0).x());
  Complex s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (r.x[i] + 1.0);
    for (int k = 0; k < n; ++k) {
      const double v = 0.5 * (r.x[k] + 1.0);
      s += 0.25 * r.w[i] * r.w[k] * u * f(p0 + u * e1 + u * v * e2);
    }
  }
  return jac * s;
}

// Fan from `center`, each fan triangle split into 4^levels congruent pieces.
inline Complex polygon(const std::vector<Vec2>& poly, const Vec2& center, const std::function<Complex(const Vec2&)>& f,
                       int n, int levels = 1) {
  std::function<Complex(const Vec2&, const Vec2&, const Vec2&, int)> rec = [&](const Vec2& a, const Vec2& b,
                                                                               const Vec2& c, int l) -> Complex {
    if (l == 0) return triangle(a, b, c, f, n);
    const Vec2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
    return rec(a, ab, ca, l - 1) + rec(ab, b, bc, l - 1) + rec(ca, bc, c, l - 1) + rec(ab, bc, ca, l - 1);
  };
  Complex s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) s += rec(center, poly[i], poly[(i + 1) % poly.size()], levels);
  return s;
}

// Bessel functions from their integral representations:
//   J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt                       (periodic, trapezoid rule)
//   Y_0(x) = (1/pi) int_0^pi sin(x sin t) dt - (2/pi) int_0^inf exp(-x sinh t) dt
//   Y_1(x) = (1/pi) int_0^pi sin(x sin t - t) dt - (1/pi) int_0^inf (e^t - e^-t) exp(-x sinh t) dt
struct Bessel {
  double j0, j1, y0, y1;
};

inline Bessel bessel_integral(double x) {
  const int m = 2 * static_cast<int>(x) + 200;
  double j0 = 0, j1 = 0, a0 = 0, a1 = 0;
  for (int i = 0; i <= m; ++i) {
    const double t = pi * i / m, w = (i == 0 || i == m) ? 0.5 : 1.0;
    j0 += w * std::cos(x * std::sin(t));
    j1 += w * std::cos(t - x * std::sin(t));
  }
  j0 /= m;
  j1 /= m;
  // the sine integrands are not periodic-smooth; composite Gauss on [0, pi]
  const auto r = gauss_legendre(40);
  const int panels = 8 + static_cast<int>(x);
  for (int p = 0; p < panels; ++p) {
    const double lo = pi * p / panels, hi = pi * (p + 1) / panels;
    for (int i = 0; i < 40; ++i) {
      const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * r.x[i], w = 0.5 * (hi - lo) * r.w[i];
      a0 += w * std::sin(x * std::sin(t));
      a1 += w * std::sin(x * std::sin(t) - t);
    }
  }
  const double tmax = std::asinh(60.0 / x) + 1.0;
  double b0 = 0, b1 = 0;
  const int tp = 64;
  for (int p = 0; p < tp; ++p) {
    const double lo = tmax * p / tp, hi = tmax * (p + 1) / tp;
    for (int i = 0; i < 40; ++i) {
      const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * r.x[i], w = 0.5 * (hi - lo) * r.w[i];
      const double e = std::exp(-x * std::sinh(t));
      b0 += w * e;
      b1 += w * 2.0 * std::sinh(t) * e;
    }
  }
  return {j0, j1, a0 / pi - 2.0 * b0 / pi, a1 / pi - b1 / pi};
}

// Ascending series in quad precision; usable while the cancellation (about e^x) leaves
// enough digits, i.e. x up to ~40.
inline Bessel bessel_series_quad(double xd) {
  using Q = __float128;
  const Q x = xd, h = x / 2, q = h * h;
  Q t0 = 1, t1 = h, j0 = 0, j1 = 0, s0 = 0, s1 = 0, hk = 0;
  for (int k = 0; k < 400; ++k) {
    const Q hk1 = hk + Q(1) / (k + 1);
    j0 += t0;
    j1 += t1;
    s0 -= hk * t0;
    s1 += (hk + hk1) * t1;
    t0 *= -q / (Q(k + 1) * Q(k + 1));
    t1 *= -q / (Q(k + 1) * Q(k + 2));
    hk = hk1;
    const Q a0 = t0 < 0 ? -t0 : t0;
    if (k > 10 && a0 < Q(1e-40)) break;
  }
  // log in long double (~1e-19), enough after the final rounding to double
  const Q lg = Q(std::log(static_cast<long double>(xd) / 2)) + Q(0.5772156649015328606065120900824024310L);
  const Q y0 = (2 / Q(pi)) * (lg * j0 + s0);
  const Q y1 = -2 / (Q(pi) * x) + (2 / Q(pi)) * lg * j1 - s1 / Q(pi);
  return {static_cast<double>(j0), static_cast<double>(j1), static_cast<double>(y0), static_cast<double>(y1)};
}

}  // namespace oracle
