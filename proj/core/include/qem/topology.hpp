#pragma once

#include "qem/quadrature.hpp"

namespace qem {

// Curvature-integral estimates of the topological invariants, all derived
// from one IntegralTable:
//   8 pi^2 chi  = integral(|W+|^2 + |W-|^2 + R^2/24 - |ric0|^2/2)
//   12 pi^2 tau = integral(|W+|^2 - |W-|^2)
//   4 pi^2 (2 chi +- 3 tau) = integral(2|W+-|^2 + R^2/24 - |ric0|^2/2)
struct TopologyReport {
  double chi_hat = 0.0;
  double tau_hat = 0.0;
  double ht_plus = 0.0;   // 2 chi_hat + 3 tau_hat via the combined identity
  double ht_minus = 0.0;  // 2 chi_hat - 3 tau_hat
  IntegralTable integrals;
  // |full - coarser level| differences: the reported quadrature tolerance.
  double chi_err_est = 0.0;
  double tau_err_est = 0.0;
};

double chi_hat_from(const IntegralTable& t);
double tau_hat_from(const IntegralTable& t);

struct HTCheck {
  double ht_plus = 0.0;
  double ht_minus = 0.0;
  bool pass = false;
};

HTCheck ht_check_from(const IntegralTable& t, double tol = 1e-6);

// Both Euler-characteristic identities for a quasi-Einstein structure:
//   rhs_scal = int|W|^2 + ((m-2)L/(2m(m-1))) int|gf|^2
//            + ((m+2)/(4m(m-1))) int R|gf|^2
//            - ((m+2)/(12(m-1))) int R^2 + 2((m+1)/(m-1)) L^2 Vol
//   rhs_grad = int|W|^2 + ((m-10)L/(6m(m-1))) int|gf|^2
//            + ((m+2)/(6m(m-1))) int R|gf|^2
//            - ((m+2)/(12(m-1))) int<gR,gf> + (2/3) L^2 Vol
// (L = lambda, gf = grad f, gR = grad R.)  Requires finite m > 1.
struct Lemma2Sides {
  double rhs_scal = 0.0;
  double rhs_grad = 0.0;
};

Lemma2Sides lemma2_from_table(const IntegralTable& t, double m, double lambda);

struct Lemma2Check {
  bool gated = false;       // input failed the quasi-Einstein residual gate
  std::string gate_reason;
  double max_qe_residual = 0.0;
  double lhs = 0.0;         // 8 pi^2 chi_hat
  double rhs_scal = 0.0;
  double rhs_grad = 0.0;
  double res_scal = 0.0;    // lhs - rhs_scal
  double res_grad = 0.0;
};

struct GurskyCheck {
  bool gated = false;  // min sampled R <= 0: hypothesis fails, nothing asserted
  double min_scal = 0.0;
  double lhs = 0.0;  // 8 pi^2 (chi_hat - 2)
  double mid = 0.0;  // integral |W+|^2
  double rhs = 0.0;  // integral |W|^2
  bool ineq1_ok = false;  // lhs <= mid
  bool ineq2_ok = false;  // mid <= rhs
};

GurskyCheck gursky_check_from(const IntegralTable& t, double tol = 1e-6);

struct YamabeIntegralCheck {
  double value = 0.0;         // integral (R^2 - 12 |ric0|^2)
  double identity_lhs = 0.0;  // 8 pi^2 chi_hat - integral |W|^2
  double identity_rhs = 0.0;  // value / 24
  double rel_err = 0.0;
  bool pass = false;
};

YamabeIntegralCheck yamabe_integral_check_from(const IntegralTable& t, double rel_tol = 1e-6);

// --- Chart-level wrappers (each runs its own quadrature sweep) --------------

double gauss_bonnet_chern(const MetricChart& chart, const QuadratureSpec& spec);
double hirzebruch(const MetricChart& chart, const QuadratureSpec& spec);
HTCheck ht_check(const MetricChart& chart, const QuadratureSpec& spec, double tol = 1e-6);
GurskyCheck gursky_check(const MetricChart& chart, const QuadratureSpec& spec, double tol = 1e-6);
YamabeIntegralCheck yamabe_integral_check(const MetricChart& chart, const QuadratureSpec& spec,
                                          double rel_tol = 1e-6);

// Gate: max |qe residual| over a coarse subset of quadrature nodes must stay
// below gate_tol, otherwise the identities are not expected to hold and the
// check reports gated instead of failing.
Lemma2Check lemma2_check(const MetricChart& chart, const QEData& qe, const QuadratureSpec& spec,
                         double gate_tol = 1e-5);

// Full report: integrals at the requested resolution plus a coarser sweep
// for the error estimate.
TopologyReport topology_report(const MetricChart& chart, const QuadratureSpec& spec,
                               const QEData* qe = nullptr);

}  // namespace qem
