#include "qem/metric_chart.hpp"

#include <Eigen/Cholesky>
#include <sstream>

#include "qem/errors.hpp"

namespace qem {

namespace {

std::string point_str(const VectorN& p) {
  std::ostringstream os;
  os << "(";
  for (int a = 0; a < p.size(); ++a) os << (a ? ", " : "") << p[a];
  os << ")";
  return os.str();
}

// First derivative of every metric component along each axis by central
// differences at step h.
void fd_dg_at(const MetricChart& chart, const VectorN& p, double h, Tensor3& out) {
  const int n = chart.dim;
  VectorN q = p;
  for (int a = 0; a < n; ++a) {
    q[a] = p[a] + h;
    const MatrixN gp = chart.g(q);
    q[a] = p[a] - h;
    const MatrixN gm = chart.g(q);
    q[a] = p[a];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(a, i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
  }
}

// Second derivatives of g by central stencils at step h (diagonal three-point,
// off-diagonal four-corner).
void fd_d2g_at(const MetricChart& chart, const VectorN& p, double h, Tensor4& out) {
  const int n = chart.dim;
  const MatrixN g0 = chart.g(p);
  VectorN q = p;
  for (int a = 0; a < n; ++a) {
    q[a] = p[a] + h;
    const MatrixN gp = chart.g(q);
    q[a] = p[a] - h;
    const MatrixN gm = chart.g(q);
    q[a] = p[a];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(a, a, i, j) = (gp(i, j) - 2.0 * g0(i, j) + gm(i, j)) / (h * h);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      q = p;
      q[a] += h; q[b] += h;
      const MatrixN gpp = chart.g(q);
      q[b] = p[b] - h;
      const MatrixN gpm = chart.g(q);
      q[a] = p[a] - h; q[b] = p[b] + h;
      const MatrixN gmp = chart.g(q);
      q[b] = p[b] - h;
      const MatrixN gmm = chart.g(q);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double v = (gpp(i, j) - gpm(i, j) - gmp(i, j) + gmm(i, j)) / (4.0 * h * h);
          out(a, b, i, j) = v;
          out(b, a, i, j) = v;
        }
    }
}

// FD of the analytic dg: used for d2g when only first derivatives are given.
void fd_d2g_from_dg(const MetricChart& chart, const VectorN& p, double h, Tensor4& out) {
  const int n = chart.dim;
  Tensor3 dp(n), dm(n);
  VectorN q = p;
  for (int b = 0; b < n; ++b) {
    q[b] = p[b] + h;
    chart.dg(q, dp);
    q[b] = p[b] - h;
    chart.dg(q, dm);
    q[b] = p[b];
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out(a, b, i, j) = (dp(a, i, j) - dm(a, i, j)) / (2.0 * h);
  }
  // Symmetrize in (a,b): mixed analytic/FD evaluation is symmetric only up to
  // FD error, and downstream formulas assume exact symmetry.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double v = 0.5 * (out(a, b, i, j) + out(b, a, i, j));
          out(a, b, i, j) = v;
          out(b, a, i, j) = v;
        }
}

}  // namespace

void fd_dg_plain(const MetricChart& chart, const VectorN& p, double h, Tensor3& out) {
  out = Tensor3(chart.dim);
  fd_dg_at(chart, p, h, out);
}

MatrixN check_point(const MetricChart& chart, const VectorN& p) {
  if (p.size() != chart.dim)
    throw ValidationError("chart '" + chart.label + "': point dimension " +
                          std::to_string(p.size()) + " != chart dimension " +
                          std::to_string(chart.dim));
  if (chart.dim < 2 || chart.dim > kMaxDim)
    throw ValidationError("chart '" + chart.label + "': dimension must be in [2, " +
                          std::to_string(kMaxDim) + "]");
  if (!chart.domain.contains(p, chart.stencil_margin()))
    throw ValidationError("chart '" + chart.label + "': point " + point_str(p) +
                          " outside domain (or too close to the boundary for the FD stencil)");
  MatrixN g = chart.g(p);
  // Enforce exact symmetry before the definiteness test.
  g = 0.5 * (g + g.transpose()).eval();
  Eigen::LLT<MatrixN> llt(g);
  if (llt.info() != Eigen::Success)
    throw ValidationError("chart '" + chart.label + "': metric not positive definite at " +
                          point_str(p));
  return g;
}

MetricDerivs eval_metric_derivs(const MetricChart& chart, const VectorN& p) {
  const int n = chart.dim;
  MetricDerivs out;
  // Validates the domain (including the stencil margin) and definiteness, and
  // returns the symmetrized metric.
  out.g = check_point(chart, p);
  out.dg = Tensor3(n);
  out.d2g = Tensor4(n);

  const double h = chart.fd_step_effective();
  if (chart.has_analytic_dg()) {
    chart.dg(p, out.dg);
  } else {
    // One Richardson level: D = (4 D(h/2) - D(h)) / 3, error O(h^4).
    Tensor3 coarse(n), fine(n);
    fd_dg_at(chart, p, h, coarse);
    fd_dg_at(chart, p, h / 2.0, fine);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out.dg(a, i, j) = (4.0 * fine(a, i, j) - coarse(a, i, j)) / 3.0;
  }

  if (chart.has_analytic_d2g()) {
    chart.d2g(p, out.d2g);
  } else if (chart.has_analytic_dg()) {
    Tensor4 coarse(n), fine(n);
    fd_d2g_from_dg(chart, p, h, coarse);
    fd_d2g_from_dg(chart, p, h / 2.0, fine);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            out.d2g(a, b, i, j) = (4.0 * fine(a, b, i, j) - coarse(a, b, i, j)) / 3.0;
  } else {
    Tensor4 coarse(n), fine(n);
    fd_d2g_at(chart, p, h, coarse);
    fd_d2g_at(chart, p, h / 2.0, fine);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            out.d2g(a, b, i, j) = (4.0 * fine(a, b, i, j) - coarse(a, b, i, j)) / 3.0;
  }
  return out;
}

}  // namespace qem
