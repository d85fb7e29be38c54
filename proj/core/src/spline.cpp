#include "qem/spline.hpp"

#include <algorithm>
#include <cstddef>

#include "qem/errors.hpp"

namespace qem {

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  const std::size_t n = t_.size();
  if (n < 2 || y_.size() != n) throw ValidationError("spline: need >= 2 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t_[i] > t_[i - 1])) throw ValidationError("spline: abscissae not strictly increasing");

  // Tridiagonal system for the knot second derivatives (Thomas algorithm),
  // natural boundary conditions m_0 = m_{n-1} = 0.
  m_.assign(n, 0.0);
  if (n == 2) return;
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = t_[i] - t_[i - 1];
    const double hr = t_[i + 1] - t_[i];
    diag[i] = 2.0 * (hl + hr);
    upper[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double hl = t_[i] - t_[i - 1];  // sub-diagonal entry
    const double w = hl / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

int CubicSpline::segment(double x) const {
  // Clamped lookup: evaluation outside [t_0, t_end] extrapolates the end cubic.
  auto it = std::upper_bound(t_.begin(), t_.end(), x);
  int i = static_cast<int>(it - t_.begin()) - 1;
  i = std::max(0, std::min(i, static_cast<int>(t_.size()) - 2));
  return i;
}

double CubicSpline::eval(double x) const {
  const int i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - x) / h;
  const double b = (x - t_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double x) const {
  const int i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - x) / h;
  const double b = (x - t_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double CubicSpline::deriv2(double x) const {
  const int i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - x) / h;
  const double b = (x - t_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

}  // namespace qem
