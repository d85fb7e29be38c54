#pragma once

#include <vector>

namespace qem {

// Natural cubic spline through (t_i, y_i): C^2 interpolant with vanishing
// second derivative at both ends.  Supplies value and the first/second
// derivatives, which is exactly what a MetricChart's analytic-derivative path
// needs from tabulated cohomogeneity-one coefficients.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> t, std::vector<double> y);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  double t_front() const { return t_.front(); }
  double t_back() const { return t_.back(); }

 private:
  int segment(double x) const;

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace qem
