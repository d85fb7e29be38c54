#include "qem/qe.hpp"

#include <cmath>
#include <limits>

#include "qem/csv.hpp"
#include "qem/errors.hpp"

namespace qem {

namespace {

// Covariant Laplacian of a scalar from its coordinate derivatives:
// Lap phi = g^{ij} (d2phi_ij - Gamma^k_ij dphi_k).
double laplacian_from(const MatrixN& g_inv, const Tensor3& gamma, const VectorN& dphi,
                      const MatrixN& d2phi) {
  const int n = static_cast<int>(dphi.size());
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double hess = d2phi(i, j);
      for (int k = 0; k < n; ++k) hess -= gamma(k, i, j) * dphi[k];
      sum += g_inv(i, j) * hess;
    }
  return sum;
}

// Plain central finite differences of a scalar field: gradient plus
// symmetric second-derivative matrix (3-point diagonal, 4-corner cross).
void fd_scalar_field(const std::function<double(const VectorN&)>& field, const VectorN& p,
                     double h, int n, VectorN& dphi, MatrixN& d2phi) {
  dphi.resize(n);
  d2phi.resize(n, n);
  const double phi0 = field(p);
  VectorN q = p;
  for (int a = 0; a < n; ++a) {
    q[a] = p[a] + h;
    const double plus = field(q);
    q[a] = p[a] - h;
    const double minus = field(q);
    q[a] = p[a];
    dphi[a] = (plus - minus) / (2.0 * h);
    d2phi(a, a) = (plus - 2.0 * phi0 + minus) / (h * h);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      q[a] = p[a] + h;
      q[b] = p[b] + h;
      const double pp = field(q);
      q[b] = p[b] - h;
      const double pm = field(q);
      q[a] = p[a] - h;
      const double mm = field(q);
      q[b] = p[b] + h;
      const double mp = field(q);
      q[a] = p[a];
      q[b] = p[b];
      d2phi(a, b) = (pp - pm - mp + mm) / (4.0 * h * h);
      d2phi(b, a) = d2phi(a, b);
    }
}

void require_clearance(const MetricChart& chart, const VectorN& p, double extra,
                       const char* what) {
  if (!chart.domain.contains(p, chart.stencil_margin() + extra))
    throw ValidationError(std::string(what) +
                          ": point too close to the chart boundary for the stencil");
}

}  // namespace

bool QEData::soliton() const { return std::isinf(m); }

void QEData::validate(const MetricChart& chart) const {
  if (!f) throw ValidationError("qe data: potential f is not set");
  if (!df) throw ValidationError("qe data: differential df is not set");
  if (!(m > 0.0)) throw ValidationError("qe data: m must be positive (or inf)");
  if (std::isnan(m)) throw ValidationError("qe data: m is NaN");
  if (n != chart.dim)
    throw ValidationError("qe data: dimension " + std::to_string(n) +
                          " does not match chart dimension " + std::to_string(chart.dim));
}

PotentialDerivs eval_potential_derivs(const MetricChart& chart, const QEData& qe,
                                      const VectorN& p) {
  const int n = chart.dim;
  PotentialDerivs out;
  out.f = qe.f(p);
  out.df = qe.df(p);
  if (out.df.size() != n) throw ValidationError("qe data: df returned wrong dimension");
  if (qe.has_analytic_d2f()) {
    out.d2f = qe.d2f(p);
    if (out.d2f.rows() != n || out.d2f.cols() != n)
      throw ValidationError("qe data: d2f returned wrong dimension");
    out.d2f = 0.5 * (out.d2f + out.d2f.transpose()).eval();
    return out;
  }
  // Central differences of df with one Richardson level, symmetrized.
  const double h = chart.fd_step_effective();
  require_clearance(chart, p, h, "qe data");
  const auto fd_once = [&](double step) {
    MatrixN d2(n, n);
    VectorN q = p;
    for (int a = 0; a < n; ++a) {
      q[a] = p[a] + step;
      const VectorN plus = qe.df(q);
      q[a] = p[a] - step;
      const VectorN minus = qe.df(q);
      q[a] = p[a];
      for (int b = 0; b < n; ++b) d2(a, b) = (plus[b] - minus[b]) / (2.0 * step);
    }
    return d2;
  };
  const MatrixN coarse = fd_once(h);
  const MatrixN fine = fd_once(0.5 * h);
  out.d2f = (4.0 * fine - coarse) / 3.0;
  out.d2f = 0.5 * (out.d2f + out.d2f.transpose()).eval();
  return out;
}

QEResidual qe_residual(const MetricChart& chart, const QEData& qe, const VectorN& p) {
  qe.validate(chart);
  const int n = chart.dim;
  const CurvatureBundle b = curvature(chart, p);
  const PotentialDerivs pot = eval_potential_derivs(chart, qe, p);
  const double inv_m = qe.soliton() ? 0.0 : 1.0 / qe.m;

  QEResidual out;
  out.e.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double hess = pot.d2f(i, j);
      for (int k = 0; k < n; ++k) hess -= b.christoffel(k, i, j) * pot.df[k];
      out.e(i, j) = b.ricci(i, j) + hess - inv_m * pot.df[i] * pot.df[j] -
                    qe.lambda * b.g(i, j);
    }
  const MatrixN raised = b.g_inv * out.e * b.g_inv;
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm2 += out.e(i, j) * raised(i, j);
  out.norm = std::sqrt(std::max(0.0, norm2));
  return out;
}

Lemma1Residuals lemma1_residuals(const MetricChart& chart, const QEData& qe, const VectorN& p) {
  qe.validate(chart);
  if (chart.dim != 4)
    throw ValidationError("lemma1 residuals: the structure identities are stated in dimension 4");
  if (qe.soliton())
    throw ValidationError("lemma1 residuals: require finite m (soliton limit not covered)");
  if (!(qe.m > 0.0)) throw ValidationError("lemma1 residuals: require m > 0");

  const int n = 4;
  const double m = qe.m;
  const double lam = qe.lambda;
  const CurvatureBundle b = curvature(chart, p);
  const PotentialDerivs pot = eval_potential_derivs(chart, qe, p);

  const VectorN grad_f_up = b.g_inv * pot.df;  // grad f with index raised
  const double grad_f2 = pot.df.dot(grad_f_up);
  const double lap_f = laplacian_from(b.g_inv, b.christoffel, pot.df, pot.d2f);

  // grad R / Lap R: finite differences of the scalar curvature field.
  const double h_R = 10.0 * chart.fd_step_effective();
  require_clearance(chart, p, h_R, "lemma1 residuals");
  const auto scal_field = [&](const VectorN& x) { return curvature(chart, x).scalar; };
  VectorN dR;
  MatrixN d2R;
  fd_scalar_field(scal_field, p, h_R, n, dR, d2R);
  const double lap_R = laplacian_from(b.g_inv, b.christoffel, dR, d2R);
  const double grad_R_grad_f = dR.dot(grad_f_up);

  const MatrixN ric_endo = b.ricci_endo;
  const double ric2 = (ric_endo * ric_endo).trace();
  const double R = b.scalar;

  Lemma1Residuals out;
  out.r1 = R + lap_f - grad_f2 / m - n * lam;

  VectorN r2(n);
  for (int a = 0; a < n; ++a) {
    double ric_grad_f = 0.0;  // (Ric(grad f))_a = ric_ab g^{bc} df_c
    for (int b2 = 0; b2 < n; ++b2) ric_grad_f += b.ricci(a, b2) * grad_f_up[b2];
    r2[a] = 0.5 * dR[a] - ((m - 1.0) / m) * ric_grad_f - (1.0 / m) * (R - 3.0 * lam) * pot.df[a];
  }
  out.r2_norm = std::sqrt(std::max(0.0, r2.dot(static_cast<VectorN>(b.g_inv * r2))));

  out.r3 = lap_R - ((m + 2.0) / m) * grad_R_grad_f + (2.0 * (m - 1.0) / m) * ric2 +
           (2.0 / m) * R * R - (2.0 * (m + 6.0) / m) * lam * R + (24.0 / m) * lam * lam;
  return out;
}

double u_identity_residual(const MetricChart& chart, const QEData& qe, const VectorN& p) {
  qe.validate(chart);
  if (qe.soliton())
    throw ValidationError("u identity: require finite m (u = exp(-f/m) degenerates)");
  const int n = chart.dim;
  const double m = qe.m;

  const CurvatureBundle b = curvature(chart, p);
  const double h = chart.fd_step_effective();
  require_clearance(chart, p, h, "u identity");
  const auto u_field = [&](const VectorN& x) { return std::exp(-qe.f(x) / m); };
  VectorN du;
  MatrixN d2u;
  fd_scalar_field(u_field, p, h, n, du, d2u);
  const double lap_u = laplacian_from(b.g_inv, b.christoffel, du, d2u);
  const double u = u_field(p);
  return lap_u - (b.scalar - n * qe.lambda) * u / m;
}

ScalarBoundCheck scalar_bound_check(const MetricChart& chart, const QEData& qe,
                                    const GridSpec& grid) {
  qe.validate(chart);
  if (chart.dim != 4)
    throw ValidationError("scalar bound: stated in dimension 4");
  if (grid.per_axis < 1) throw ValidationError("scalar bound: per_axis must be >= 1");

  const Box& box = grid.box ? *grid.box : chart.domain;
  const int n = chart.dim;
  const double stencil = chart.stencil_margin();
  std::vector<std::vector<double>> axes(n);
  for (int a = 0; a < n; ++a) {
    const double extent = box.hi[a] - box.lo[a];
    const double lo = box.lo[a] + grid.margin_frac * extent + stencil;
    const double hi = box.hi[a] - grid.margin_frac * extent - stencil;
    if (!(lo < hi)) throw ValidationError("scalar bound: margins leave empty axis " + std::to_string(a));
    if (grid.per_axis == 1) {
      axes[a].push_back(0.5 * (lo + hi));
    } else {
      for (int i = 0; i < grid.per_axis; ++i)
        axes[a].push_back(lo + (hi - lo) * i / (grid.per_axis - 1));
    }
  }

  ScalarBoundCheck out;
  out.bound = qe.soliton() ? 0.0 : 12.0 * qe.lambda / (qe.m + 3.0);
  bool first = true;
  std::vector<int> idx(n, 0);
  VectorN p(n);
  while (true) {
    for (int a = 0; a < n; ++a) p[a] = axes[a][idx[a]];
    const double scal = curvature(chart, p).scalar;
    if (first || scal < out.min_scal) {
      out.min_scal = scal;
      out.argmin = p;
      first = false;
    }
    int a = n - 1;
    while (a >= 0 && ++idx[a] == static_cast<int>(axes[a].size())) idx[a--] = 0;
    if (a < 0) break;
  }
  out.ok = out.min_scal >= out.bound - 1e-9 * std::max(1.0, std::abs(out.bound));
  return out;
}

OscfIntegralCheck oscf_integral_check(double grad_R_grad_f_integral, double m, double lambda,
                                      double vol, double f_osc) {
  if (std::isinf(m))
    throw ValidationError("oscf integral check: require finite m");
  if (!(m > 0.0)) throw ValidationError("oscf integral check: m must be positive");
  if (!(lambda > 0.0)) throw ValidationError("oscf integral check: lambda must be positive");
  if (!(vol > 0.0)) throw ValidationError("oscf integral check: volume must be positive");
  if (!(f_osc >= 0.0)) throw ValidationError("oscf integral check: f_osc must be >= 0");

  OscfIntegralCheck out;
  out.lhs = grad_R_grad_f_integral;
  const double K = (m + 2.0) / m;
  out.rhs = (2.0 * m * m / ((m + 3.0) * (m + 2.0))) * lambda * lambda * vol *
            (std::exp(K * f_osc) - 1.0);
  out.ok = out.lhs <= out.rhs + 1e-9 * std::max(1.0, std::abs(out.rhs));
  return out;
}

void export_qe_residuals(const MetricChart& chart, const QEData& qe,
                         const std::vector<VectorN>& points, const std::string& path) {
  CsvTable table;
  for (int a = 0; a < chart.dim; ++a) table.header.push_back("x" + std::to_string(a));
  table.header.insert(table.header.end(), {"r1", "r2_norm", "r3", "qe_residual"});
  for (const VectorN& p : points) {
    const Lemma1Residuals lem = lemma1_residuals(chart, qe, p);
    const QEResidual res = qe_residual(chart, qe, p);
    std::vector<double> row;
    for (int a = 0; a < chart.dim; ++a) row.push_back(p[a]);
    row.insert(row.end(), {lem.r1, lem.r2_norm, lem.r3, res.norm});
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table.header, table.rows);
}

}  // namespace qem
