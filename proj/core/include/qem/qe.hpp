#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qem/curvature.hpp"
#include "qem/metric_chart.hpp"

namespace qem {

// Candidate quasi-Einstein structure on a chart: potential f, its coordinate
// differential df_a = d_a f, optionally the coordinate second derivatives
// d2f_ab = d_a d_b f (finite differences of df otherwise), the parameter
// m > 0 (infinity selects the gradient Ricci soliton limit, dropping every
// 1/m term), and the constant lambda from
//   Ric + Hess f - (1/m) df (x) df = lambda g.
struct QEData {
  std::function<double(const VectorN&)> f;
  std::function<VectorN(const VectorN&)> df;
  std::function<MatrixN(const VectorN&)> d2f;  // optional
  double m = 4.0;
  double lambda = 0.0;
  int n = 4;

  bool has_analytic_d2f() const { return static_cast<bool>(d2f); }
  bool soliton() const;  // m == infinity
  // Throws ValidationError unless m > 0 (or infinite), f and df are set, and
  // n matches the chart dimension.
  void validate(const MetricChart& chart) const;
};

// Potential value with first and second coordinate derivatives at a point.
struct PotentialDerivs {
  double f = 0.0;
  VectorN df;
  MatrixN d2f;
};

PotentialDerivs eval_potential_derivs(const MetricChart& chart, const QEData& qe, const VectorN& p);

// --- Pointwise residuals ----------------------------------------------------

struct QEResidual {
  MatrixN e;         // E_ij = ric_ij + Hess_ij f - (1/m) df_i df_j - lambda g_ij
  double norm = 0.0; // |E|_g = sqrt(g^ik g^jl E_ij E_kl)
};

QEResidual qe_residual(const MetricChart& chart, const QEData& qe, const VectorN& p);

// Residuals of the three structure identities satisfied by a 4-dimensional
// quasi-Einstein metric (lhs minus rhs of each):
//   r1:      R + Lap f - |grad f|^2 / m - 4 lambda
//   r2 (vector, g-norm reported):
//            (1/2) grad R - ((m-1)/m) Ric(grad f) - (1/m)(R - 3 lambda) grad f
//   r3:      Lap R - ((m+2)/m) <grad R, grad f> + (2(m-1)/m) |Ric|^2
//            + (2/m) R^2 - (2(m+6)/m) lambda R + (24/m) lambda^2
// grad R and Lap R are finite differences of the computed scalar curvature
// field with step 10 x (metric step).  Requires n == 4 and finite m > 0.
struct Lemma1Residuals {
  double r1 = 0.0;
  double r2_norm = 0.0;
  double r3 = 0.0;
};

Lemma1Residuals lemma1_residuals(const MetricChart& chart, const QEData& qe, const VectorN& p);

// Residual of  Lap u = (1/m)(R - n lambda) u  for u = exp(-f/m), with Lap u
// computed by finite differences of the u field (independent of the chain
// rule).  Any dimension; requires finite m.
double u_identity_residual(const MetricChart& chart, const QEData& qe, const VectorN& p);

// --- Scalar curvature lower bound -------------------------------------------

// Scans a grid for min R and compares against the threshold 12 lambda / (m+3)
// that a nontrivial compact 4-dimensional quasi-Einstein metric must respect.
struct ScalarBoundCheck {
  double min_scal = 0.0;
  VectorN argmin;
  double bound = 0.0;
  bool ok = false;
};

ScalarBoundCheck scalar_bound_check(const MetricChart& chart, const QEData& qe,
                                    const GridSpec& grid = {});

// --- Integral oscillation estimate ------------------------------------------

// Checks  integral <grad R, grad f>  <=
//   (2 m^2 / ((m+3)(m+2))) lambda^2 Vol (e^{K f_osc} - 1),  K = (m+2)/m,
// given the already-computed left-hand integral.  Requires finite m.
struct OscfIntegralCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

OscfIntegralCheck oscf_integral_check(double grad_R_grad_f_integral, double m, double lambda,
                                      double vol, double f_osc);

// --- Residual export ---------------------------------------------------------

// One CSV row per point: coordinates, r1, |r2|, r3, |qe residual|.
void export_qe_residuals(const MetricChart& chart, const QEData& qe,
                         const std::vector<VectorN>& points, const std::string& path);

}  // namespace qem
