#include "qem/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qem/errors.hpp"

namespace qem {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim4(const MetricChart& chart, const char* what) {
  if (chart.dim != 4)
    throw ValidationError(std::string(what) + ": requires a 4-dimensional chart, got dim = " +
                          std::to_string(chart.dim));
}

double rel_tolerance(double value, double tol) { return tol * std::max(1.0, std::abs(value)); }

}  // namespace

double chi_hat_from(const IntegralTable& t) {
  return (t.w2_plus + t.w2_minus + t.R2 / 24.0 - 0.5 * t.tr2) / (8.0 * kPi * kPi);
}

double tau_hat_from(const IntegralTable& t) {
  return (t.w2_plus - t.w2_minus) / (12.0 * kPi * kPi);
}

HTCheck ht_check_from(const IntegralTable& t, double tol) {
  HTCheck out;
  out.ht_plus = (2.0 * t.w2_plus + t.R2 / 24.0 - 0.5 * t.tr2) / (4.0 * kPi * kPi);
  out.ht_minus = (2.0 * t.w2_minus + t.R2 / 24.0 - 0.5 * t.tr2) / (4.0 * kPi * kPi);
  out.pass = out.ht_plus >= -tol && out.ht_minus >= -tol;
  return out;
}

Lemma2Sides lemma2_from_table(const IntegralTable& t, double m, double lambda) {
  if (std::isinf(m)) throw ValidationError("lemma2: requires finite m");
  if (!(m > 1.0)) throw ValidationError("lemma2: requires m > 1");
  Lemma2Sides out;
  const double w2 = t.w2();
  out.rhs_scal = w2 + ((m - 2.0) * lambda / (2.0 * m * (m - 1.0))) * t.grad_f2 +
                 ((m + 2.0) / (4.0 * m * (m - 1.0))) * t.R_grad_f2 -
                 ((m + 2.0) / (12.0 * (m - 1.0))) * t.R2 +
                 2.0 * ((m + 1.0) / (m - 1.0)) * lambda * lambda * t.vol;
  out.rhs_grad = w2 + ((m - 10.0) * lambda / (6.0 * m * (m - 1.0))) * t.grad_f2 +
                 ((m + 2.0) / (6.0 * m * (m - 1.0))) * t.R_grad_f2 -
                 ((m + 2.0) / (12.0 * (m - 1.0))) * t.grad_R_grad_f +
                 (2.0 / 3.0) * lambda * lambda * t.vol;
  return out;
}

GurskyCheck gursky_check_from(const IntegralTable& t, double tol) {
  GurskyCheck out;
  out.min_scal = t.min_scal;
  out.lhs = 8.0 * kPi * kPi * (chi_hat_from(t) - 2.0);
  out.mid = t.w2_plus;
  out.rhs = t.w2();
  if (!(t.min_scal > 0.0)) {
    out.gated = true;
    return out;
  }
  out.ineq1_ok = out.lhs <= out.mid + rel_tolerance(out.mid, tol);
  out.ineq2_ok = out.mid <= out.rhs + rel_tolerance(out.rhs, tol);
  return out;
}

YamabeIntegralCheck yamabe_integral_check_from(const IntegralTable& t, double rel_tol) {
  YamabeIntegralCheck out;
  out.value = t.R2 - 12.0 * t.tr2;
  out.identity_lhs = 8.0 * kPi * kPi * chi_hat_from(t) - t.w2();
  out.identity_rhs = out.value / 24.0;
  const double scale = std::max({1e-12, std::abs(out.identity_lhs), std::abs(out.identity_rhs)});
  out.rel_err = std::abs(out.identity_lhs - out.identity_rhs) / scale;
  out.pass = out.rel_err <= rel_tol;
  return out;
}

double gauss_bonnet_chern(const MetricChart& chart, const QuadratureSpec& spec) {
  require_dim4(chart, "gauss_bonnet_chern");
  return chi_hat_from(compute_integrals(chart, spec));
}

double hirzebruch(const MetricChart& chart, const QuadratureSpec& spec) {
  require_dim4(chart, "hirzebruch");
  return tau_hat_from(compute_integrals(chart, spec));
}

HTCheck ht_check(const MetricChart& chart, const QuadratureSpec& spec, double tol) {
  require_dim4(chart, "ht_check");
  return ht_check_from(compute_integrals(chart, spec), tol);
}

GurskyCheck gursky_check(const MetricChart& chart, const QuadratureSpec& spec, double tol) {
  require_dim4(chart, "gursky_check");
  return gursky_check_from(compute_integrals(chart, spec), tol);
}

YamabeIntegralCheck yamabe_integral_check(const MetricChart& chart, const QuadratureSpec& spec,
                                          double rel_tol) {
  require_dim4(chart, "yamabe_integral_check");
  return yamabe_integral_check_from(compute_integrals(chart, spec), rel_tol);
}

Lemma2Check lemma2_check(const MetricChart& chart, const QEData& qe, const QuadratureSpec& spec,
                         double gate_tol) {
  require_dim4(chart, "lemma2_check");
  qe.validate(chart);
  if (std::isinf(qe.m)) throw ValidationError("lemma2_check: requires finite m");
  if (!(qe.m > 1.0)) throw ValidationError("lemma2_check: requires m > 1");

  Lemma2Check out;

  // Residual gate on a coarse corner/center subset of the quadrature grid.
  const std::vector<QuadAxis> axes = build_axes(chart, spec);
  const int n = chart.dim;
  std::vector<std::vector<double>> probes(n);
  for (int a = 0; a < n; ++a) {
    const std::vector<double>& xs = axes[a].x;
    probes[a] = {xs.front(), xs[xs.size() / 2], xs.back()};
  }
  std::vector<int> idx(n, 0);
  VectorN p(n);
  while (true) {
    for (int a = 0; a < n; ++a) p[a] = probes[a][idx[a]];
    out.max_qe_residual = std::max(out.max_qe_residual, qe_residual(chart, qe, p).norm);
    int a = n - 1;
    while (a >= 0 && ++idx[a] == static_cast<int>(probes[a].size())) idx[a--] = 0;
    if (a < 0) break;
  }
  if (out.max_qe_residual > gate_tol) {
    out.gated = true;
    out.gate_reason = "quasi-Einstein residual " + std::to_string(out.max_qe_residual) +
                      " exceeds gate " + std::to_string(gate_tol) +
                      "; the Euler-characteristic identities only hold for genuine structures";
    return out;
  }

  const IntegralTable t = compute_integrals(chart, spec, &qe);
  const Lemma2Sides sides = lemma2_from_table(t, qe.m, qe.lambda);
  out.lhs = 8.0 * kPi * kPi * chi_hat_from(t);
  out.rhs_scal = sides.rhs_scal;
  out.rhs_grad = sides.rhs_grad;
  out.res_scal = out.lhs - out.rhs_scal;
  out.res_grad = out.lhs - out.rhs_grad;
  return out;
}

TopologyReport topology_report(const MetricChart& chart, const QuadratureSpec& spec,
                               const QEData* qe) {
  require_dim4(chart, "topology_report");
  TopologyReport out;
  out.integrals = compute_integrals(chart, spec, qe);
  out.chi_hat = chi_hat_from(out.integrals);
  out.tau_hat = tau_hat_from(out.integrals);
  const HTCheck ht = ht_check_from(out.integrals);
  out.ht_plus = ht.ht_plus;
  out.ht_minus = ht.ht_minus;

  QuadratureSpec coarse = spec;
  coarse.nodes_per_axis = spec.nodes_per_axis > 16 ? spec.nodes_per_axis / 2
                                                   : std::max(8, spec.nodes_per_axis - 4);
  if (coarse.nodes_per_axis == spec.nodes_per_axis) coarse.nodes_per_axis += 4;
  const IntegralTable ct = compute_integrals(chart, coarse, qe);
  out.chi_err_est = std::abs(out.chi_hat - chi_hat_from(ct));
  out.tau_err_est = std::abs(out.tau_hat - tau_hat_from(ct));
  return out;
}

}  // namespace qem
