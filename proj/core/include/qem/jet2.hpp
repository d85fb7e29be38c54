#pragma once

#include <array>
#include <cmath>

namespace qem {

// Second-order forward-mode scalar: carries a value, its gradient, and the
// (packed symmetric) Hessian with respect to N independent variables.  One
// evaluation of a metric component written in Jet2 arithmetic yields the exact
// component, all first derivatives, and all second derivatives — no truncation
// error, which is what lets the analytic-derivative chart path hit 1e-7
// residual tolerances.
//
// Only the operations needed by the (rational) fixture metrics are provided.
template <int N>
struct Jet2 {
  static constexpr int kHess = N * (N + 1) / 2;

  double v = 0.0;
  std::array<double, N> d{};
  std::array<double, kHess> h{};

  Jet2() = default;
  Jet2(double value) : v(value) {}  // NOLINT: implicit from constants is intended

  // Packed index of the (a,b) Hessian entry, a <= b.
  static constexpr int hidx(int a, int b) {
    if (a > b) { const int t = a; a = b; b = t; }
    return a * N - a * (a - 1) / 2 + (b - a);
  }

  double hess(int a, int b) const { return h[hidx(a, b)]; }

  // Independent variable number `axis` with base value `value`.
  static Jet2 var(double value, int axis) {
    Jet2 j(value);
    j.d[axis] = 1.0;
    return j;
  }

  Jet2 operator-() const {
    Jet2 r;
    r.v = -v;
    for (int a = 0; a < N; ++a) r.d[a] = -d[a];
    for (int k = 0; k < kHess; ++k) r.h[k] = -h[k];
    return r;
  }

  friend Jet2 operator+(const Jet2& x, const Jet2& y) {
    Jet2 r;
    r.v = x.v + y.v;
    for (int a = 0; a < N; ++a) r.d[a] = x.d[a] + y.d[a];
    for (int k = 0; k < kHess; ++k) r.h[k] = x.h[k] + y.h[k];
    return r;
  }
  friend Jet2 operator-(const Jet2& x, const Jet2& y) {
    Jet2 r;
    r.v = x.v - y.v;
    for (int a = 0; a < N; ++a) r.d[a] = x.d[a] - y.d[a];
    for (int k = 0; k < kHess; ++k) r.h[k] = x.h[k] - y.h[k];
    return r;
  }
  friend Jet2 operator*(const Jet2& x, const Jet2& y) {
    Jet2 r;
    r.v = x.v * y.v;
    for (int a = 0; a < N; ++a) r.d[a] = x.v * y.d[a] + y.v * x.d[a];
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        const int k = hidx(a, b);
        r.h[k] = x.v * y.h[k] + y.v * x.h[k] + x.d[a] * y.d[b] + x.d[b] * y.d[a];
      }
    return r;
  }
  friend Jet2 operator/(const Jet2& x, const Jet2& y) { return x * y.inverse(); }

  friend Jet2 operator+(double c, const Jet2& x) { return Jet2(c) + x; }
  friend Jet2 operator+(const Jet2& x, double c) { return x + Jet2(c); }
  friend Jet2 operator-(double c, const Jet2& x) { return Jet2(c) - x; }
  friend Jet2 operator-(const Jet2& x, double c) { return x - Jet2(c); }
  friend Jet2 operator*(double c, const Jet2& x) {
    Jet2 r;
    r.v = c * x.v;
    for (int a = 0; a < N; ++a) r.d[a] = c * x.d[a];
    for (int k = 0; k < kHess; ++k) r.h[k] = c * x.h[k];
    return r;
  }
  friend Jet2 operator*(const Jet2& x, double c) { return c * x; }
  friend Jet2 operator/(const Jet2& x, double c) { return (1.0 / c) * x; }
  friend Jet2 operator/(double c, const Jet2& y) { return c * y.inverse(); }

  // 1/y: d(1/y) = -y'/y^2, d2(1/y) = (2 y'a y'b - y y''ab)/y^3.
  Jet2 inverse() const {
    Jet2 r;
    const double iv = 1.0 / v;
    const double iv2 = iv * iv;
    const double iv3 = iv2 * iv;
    r.v = iv;
    for (int a = 0; a < N; ++a) r.d[a] = -d[a] * iv2;
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        const int k = hidx(a, b);
        r.h[k] = 2.0 * d[a] * d[b] * iv3 - h[k] * iv2;
      }
    return r;
  }
};

}  // namespace qem
