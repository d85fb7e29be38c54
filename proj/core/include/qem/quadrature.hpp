#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qem/metric_chart.hpp"
#include "qem/qe.hpp"

namespace qem {

enum class QuadRule { GaussLegendre, UniformMidpoint };

// Coordinate substitution applied before quadrature.  Tan integrates over
// u in (-pi/2, pi/2)^n with x = tan(u) and Jacobian prod sec^2(u_a): it turns
// the stereographic / affine whole-plane charts into bounded boxes, and the
// removed point set has measure zero.
enum class Compactification { None, Tan };

struct QuadratureSpec {
  int nodes_per_axis = 16;
  QuadRule rule = QuadRule::GaussLegendre;
  Compactification compactification = Compactification::None;
  double truncation = 0.0;  // half-side cutoff for non-compactified runs; 0 = full domain

  void validate() const;  // nodes_per_axis >= 8
};

QuadRule parse_rule(const std::string& name);
Compactification parse_compactification(const std::string& name);
std::string to_string(QuadRule rule);
std::string to_string(Compactification c);

// Per-axis nodes in chart coordinates with the substitution Jacobian folded
// into the weights.
struct QuadAxis {
  std::vector<double> x;
  std::vector<double> w;
};

std::vector<QuadAxis> build_axes(const MetricChart& chart, const QuadratureSpec& spec);

// integral of field dV_g: sum of w_i field(x_i) sqrt(det g(x_i)) over the
// tensor grid.  Deterministic two-level ordered pairwise summation; node
// evaluation parallelized over first-axis slabs (QEM_THREADS).
double integrate(const MetricChart& chart, const std::function<double(const VectorN&)>& field,
                 const QuadratureSpec& spec);

// Every curvature integral the topology checks need, from one sweep.
// The gradient-coupled entries are identically zero without a potential and
// are skipped pointwise wherever df = 0 (grad R costs 2n extra curvature
// evaluations per node otherwise).
struct IntegralTable {
  double vol = 0.0;
  double w2_plus = 0.0;         // integral |W+|^2
  double w2_minus = 0.0;        // integral |W-|^2
  double R2 = 0.0;              // integral R^2
  double tr2 = 0.0;             // integral |traceless Ric|^2
  double R = 0.0;               // integral R
  double grad_R_grad_f = 0.0;   // integral <grad R, grad f>
  double R_grad_f2 = 0.0;       // integral R |grad f|^2
  double grad_f2 = 0.0;         // integral |grad f|^2
  bool has_potential = false;
  double f_min = 0.0;           // over quadrature nodes (potential runs only)
  double f_max = 0.0;
  double min_scal = 0.0;        // min R over quadrature nodes

  double w2() const { return w2_plus + w2_minus; }
  double f_osc() const { return has_potential ? f_max - f_min : 0.0; }
};

IntegralTable compute_integrals(const MetricChart& chart, const QuadratureSpec& spec,
                                const QEData* qe = nullptr);

}  // namespace qem
