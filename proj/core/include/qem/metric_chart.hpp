#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "qem/box.hpp"
#include "qem/tensor.hpp"

namespace qem {

// Dynamic-size vectors/matrices with fixed kMaxDim capacity: no heap traffic
// in the per-point curvature path.
using VectorN = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using MatrixN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

// A coordinate chart with metric components: the geometric ground truth.
//
// g maps a point to the symmetric positive-definite component matrix g_ij.
// dg/d2g are optional analytic coordinate derivatives,
//   dg(a,i,j)    = d_a g_ij,
//   d2g(a,b,i,j) = d_a d_b g_ij;
// when absent, central finite differences of g with one Richardson
// extrapolation level are used instead.
struct MetricChart {
  int dim = 4;
  Box domain;
  std::function<MatrixN(const VectorN&)> g;
  std::function<void(const VectorN&, Tensor3&)> dg;    // optional
  std::function<void(const VectorN&, Tensor4&)> d2g;   // optional
  double orientation = +1.0;
  std::string label;
  // Finite-difference step.  0 means the default 1e-3 x (smallest domain
  // extent); charts over effectively unbounded boxes must set it to 1e-3 x
  // their characteristic length instead.
  double fd_step = 0.0;

  bool has_analytic_dg() const { return static_cast<bool>(dg); }
  bool has_analytic_d2g() const { return static_cast<bool>(d2g); }
  double fd_step_effective() const { return fd_step > 0.0 ? fd_step : 1e-3 * domain.min_extent(); }
  // Clearance a point needs from the domain boundary so that every
  // finite-difference stencil evaluation stays inside.
  double stencil_margin() const {
    return (has_analytic_dg() && has_analytic_d2g()) ? 0.0 : 2.0 * fd_step_effective();
  }
};

// Metric value plus first and second coordinate derivatives at a point,
// resolved through the analytic functions when supplied and finite
// differences otherwise.
struct MetricDerivs {
  MatrixN g;
  Tensor3 dg;   // (a,i,j)
  Tensor4 d2g;  // (a,b,i,j)
};

MetricDerivs eval_metric_derivs(const MetricChart& chart, const VectorN& p);

// Plain central-difference first derivative of g (no Richardson); exposed so
// tests can verify the O(h^2) agreement contract between analytic and FD
// derivatives.
void fd_dg_plain(const MetricChart& chart, const VectorN& p, double h, Tensor3& out);

// Throws ValidationError unless p is interior (with stencil clearance) and
// g(p) is symmetric positive definite.  Returns g(p).
MatrixN check_point(const MetricChart& chart, const VectorN& p);

}  // namespace qem
