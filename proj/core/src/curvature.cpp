#include "qem/curvature.hpp"

#include <cmath>

#include "qem/csv.hpp"
#include "qem/errors.hpp"

namespace qem {

namespace {

// g and dg only (the Christoffel path): analytic dg when supplied, otherwise
// central differences with one Richardson level, matching eval_metric_derivs.
void eval_g_dg(const MetricChart& chart, const VectorN& p, MatrixN& g, Tensor3& dg) {
  g = check_point(chart, p);
  dg = Tensor3(chart.dim);
  if (chart.has_analytic_dg()) {
    chart.dg(p, dg);
    return;
  }
  const double h = chart.fd_step_effective();
  Tensor3 coarse(chart.dim), fine(chart.dim);
  fd_dg_plain(chart, p, h, coarse);
  fd_dg_plain(chart, p, 0.5 * h, fine);
  for (std::size_t i = 0; i < dg.a.size(); ++i) dg.a[i] = (4.0 * fine.a[i] - coarse.a[i]) / 3.0;
}

Tensor3 christoffel_from(const MatrixN& g_inv, const Tensor3& dg) {
  const int n = dg.n;
  Tensor3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double sum = 0.0;
        for (int l = 0; l < n; ++l)
          sum += g_inv(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
        gamma(k, i, j) = 0.5 * sum;
        gamma(k, j, i) = gamma(k, i, j);
      }
  return gamma;
}

// Orthonormal frame as columns of E: Gram-Schmidt over the coordinate basis,
// so det E > 0; a negative chart orientation flips the last column.
MatrixN orthonormal_frame(const MatrixN& g, double orientation) {
  const int n = static_cast<int>(g.rows());
  MatrixN e = MatrixN::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    VectorN v = e.col(i);
    for (int j = 0; j < i; ++j) {
      const double proj = e.col(j).dot(g * v);
      v -= proj * e.col(j);
    }
    const double norm2 = v.dot(g * v);
    if (!(norm2 > 0.0)) throw NumericalError("frame: Gram-Schmidt degenerated");
    e.col(i) = v / std::sqrt(norm2);
  }
  if (orientation < 0.0) e.col(n - 1) *= -1.0;
  return e;
}

// W in the orthonormal frame: Wf(a,b,c,d) = E^i_a E^j_b E^k_c E^l_d W_ijkl,
// contracted one slot at a time.
Tensor4 frame_components(const Tensor4& w, const MatrixN& e) {
  const int n = w.n;
  Tensor4 t1(n), t2(n), t3(n), t4(n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int i = 0; i < n; ++i) sum += e(i, a) * w(i, j, k, l);
          t1(a, j, k, l) = sum;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int j = 0; j < n; ++j) sum += e(j, b) * t1(a, j, k, l);
          t2(a, b, k, l) = sum;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int k = 0; k < n; ++k) sum += e(k, c) * t2(a, b, k, l);
          t3(a, b, c, l) = sum;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double sum = 0.0;
          for (int l = 0; l < n; ++l) sum += e(l, d) * t3(a, b, c, l);
          t4(a, b, c, d) = sum;
        }
  return t4;
}

// Full contraction |T|^2 = T_ijkl T^ijkl for a covariant 4-tensor, raising
// indices one slot at a time.
double norm2_tensor4(const Tensor4& t, const MatrixN& g_inv) {
  const int n = t.n;
  Tensor4 t1(n), t2(n), t3(n), t4(n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int i = 0; i < n; ++i) sum += g_inv(a, i) * t(i, j, k, l);
          t1(a, j, k, l) = sum;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int j = 0; j < n; ++j) sum += g_inv(b, j) * t1(a, j, k, l);
          t2(a, b, k, l) = sum;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l) {
          double sum = 0.0;
          for (int k = 0; k < n; ++k) sum += g_inv(c, k) * t2(a, b, k, l);
          t3(a, b, c, l) = sum;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double sum = 0.0;
          for (int l = 0; l < n; ++l) sum += g_inv(d, l) * t3(a, b, c, l);
          t4(a, b, c, d) = sum;
        }
  double total = 0.0;
  for (std::size_t i = 0; i < t.a.size(); ++i) total += t.a[i] * t4.a[i];
  return total;
}

}  // namespace

Tensor3 christoffel(const MetricChart& chart, const VectorN& p) {
  MatrixN g;
  Tensor3 dg;
  eval_g_dg(chart, p, g, dg);
  const MatrixN g_inv = g.inverse();
  return christoffel_from(g_inv, dg);
}

CurvatureBundle curvature(const MetricChart& chart, const VectorN& p) {
  const int n = chart.dim;
  CurvatureBundle out;
  out.point = p;

  const MetricDerivs d = eval_metric_derivs(chart, p);
  out.g = d.g;
  out.g_inv = d.g.inverse();
  out.christoffel = christoffel_from(out.g_inv, d.dg);

  // d_a g^{kl} = -g^{km} (d_a g_mn) g^{nl}
  Tensor3 dgi(n);
  for (int a = 0; a < n; ++a) {
    MatrixN dga(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dga(i, j) = d.dg(a, i, j);
    const MatrixN m = -out.g_inv * dga * out.g_inv;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) dgi(a, k, l) = m(k, l);
  }

  // d_a Gamma^k_{ij}, exploiting symmetry in (i,j).
  Tensor4 dgam(n);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double sum = 0.0;
          for (int l = 0; l < n; ++l) {
            sum += dgi(a, k, l) * (d.dg(i, j, l) + d.dg(j, i, l) - d.dg(l, i, j)) +
                   out.g_inv(k, l) * (d.d2g(a, i, j, l) + d.d2g(a, j, i, l) - d.d2g(a, l, i, j));
          }
          dgam(a, k, i, j) = 0.5 * sum;
          dgam(a, k, j, i) = dgam(a, k, i, j);
        }

  // R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
  //           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik},
  // stored fully covariant with the sign that makes space forms positive:
  //   R_ijkl = -g_lm R^m_{ijk}.
  out.riemann = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double rup[kMaxDim];
        for (int l = 0; l < n; ++l) {
          double sum = dgam(i, l, j, k) - dgam(j, l, i, k);
          for (int m = 0; m < n; ++m)
            sum += out.christoffel(l, i, m) * out.christoffel(m, j, k) -
                   out.christoffel(l, j, m) * out.christoffel(m, i, k);
          rup[l] = sum;
        }
        for (int l = 0; l < n; ++l) {
          double low = 0.0;
          for (int m = 0; m < n; ++m) low += d.g(l, m) * rup[m];
          out.riemann(i, j, k, l) = -low;
          out.riemann(j, i, k, l) = low;
        }
      }

  out.ricci = MatrixN::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) sum += out.g_inv(k, l) * out.riemann(i, k, j, l);
      out.ricci(i, j) = sum;
      out.ricci(j, i) = sum;
    }
  out.scalar = (out.g_inv * out.ricci).trace();
  out.ricci_endo = out.g_inv * out.ricci;
  out.traceless_ricci = out.ricci - (out.scalar / n) * d.g;
  {
    const MatrixN r0 = out.g_inv * out.traceless_ricci;
    out.tr2 = (r0 * r0).trace();
  }

  Eigen::LLT<MatrixN> llt(d.g);
  double sqrt_det = 1.0;
  for (int i = 0; i < n; ++i) sqrt_det *= llt.matrixL()(i, i);
  out.vol_density = sqrt_det;

  out.weyl = Tensor4(n);
  if (n >= 3) {
    const double c1 = 1.0 / (n - 2);
    const double c2 = out.scalar / ((n - 1) * (n - 2));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double ric_part = out.ricci(i, k) * d.g(j, l) + out.ricci(j, l) * d.g(i, k) -
                                    out.ricci(i, l) * d.g(j, k) - out.ricci(j, k) * d.g(i, l);
            const double g_part = d.g(i, k) * d.g(j, l) - d.g(i, l) * d.g(j, k);
            out.weyl(i, j, k, l) = out.riemann(i, j, k, l) - c1 * ric_part + c2 * g_part;
          }
  }

  if (n == 4) {
    out.has_weyl_split = true;
    const MatrixN frame = orthonormal_frame(d.g, chart.orientation);
    const Tensor4 wf = frame_components(out.weyl, frame);

    // Self-dual / anti-self-dual blocks in the standard bivector basis
    // (e0^e1 +- e2^e3, e0^e2 +- e3^e1, e0^e3 +- e1^e2) / sqrt(2).
    static const int P[3][2] = {{0, 1}, {0, 2}, {0, 3}};
    static const int Q[3][2] = {{2, 3}, {3, 1}, {1, 2}};
    for (int sign = 0; sign < 2; ++sign) {
      const double sigma = sign == 0 ? 1.0 : -1.0;
      Eigen::Matrix3d block;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          block(a, b) = 0.5 * (wf(P[a][0], P[a][1], P[b][0], P[b][1]) +
                               sigma * wf(P[a][0], P[a][1], Q[b][0], Q[b][1]) +
                               sigma * wf(Q[a][0], Q[a][1], P[b][0], P[b][1]) +
                               wf(Q[a][0], Q[a][1], Q[b][0], Q[b][1]));
        }
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
      es.computeDirect(block);
      if (sign == 0)
        out.wplus_eigs = es.eigenvalues();
      else
        out.wminus_eigs = es.eigenvalues();
    }
    out.w2_plus = out.wplus_eigs.squaredNorm();
    out.w2_minus = out.wminus_eigs.squaredNorm();
    out.w2 = out.w2_plus + out.w2_minus;
  } else if (n >= 3) {
    out.w2 = norm2_tensor4(out.weyl, out.g_inv);
  }

  return out;
}

RicciExtremes ricci_extremes(const MetricChart& chart, const GridSpec& grid) {
  if (grid.per_axis < 1) throw ValidationError("ricci_extremes: per_axis must be >= 1");
  if (grid.margin_frac < 0.0 || grid.margin_frac >= 0.5)
    throw ValidationError("ricci_extremes: margin_frac must lie in [0, 0.5)");
  const Box& box = grid.box ? *grid.box : chart.domain;
  if (box.dim() != chart.dim) throw ValidationError("ricci_extremes: box dimension mismatch");

  const int n = chart.dim;
  const double stencil = chart.stencil_margin();
  std::vector<std::vector<double>> axes(n);
  for (int a = 0; a < n; ++a) {
    const double extent = box.hi[a] - box.lo[a];
    const double lo = box.lo[a] + grid.margin_frac * extent + stencil;
    const double hi = box.hi[a] - grid.margin_frac * extent - stencil;
    if (!(lo < hi)) throw ValidationError("ricci_extremes: margins leave empty axis " + std::to_string(a));
    if (grid.per_axis == 1) {
      axes[a].push_back(0.5 * (lo + hi));
    } else {
      for (int i = 0; i < grid.per_axis; ++i)
        axes[a].push_back(lo + (hi - lo) * i / (grid.per_axis - 1));
    }
  }

  RicciExtremes out;
  bool first = true;
  std::vector<int> idx(n, 0);
  VectorN p(n);
  while (true) {
    for (int a = 0; a < n; ++a) p[a] = axes[a][idx[a]];
    const CurvatureBundle b = curvature(chart, p);
    // Extremes of Ric as an endomorphism: generalized eigenvalues of
    // (ric, g), i.e. eigenvalues of g^{-1} ric, which are real.
    const Eigen::MatrixXd ric_x = b.ricci;
    const Eigen::MatrixXd g_x = b.g;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ric_x, g_x);
    if (es.info() != Eigen::Success) throw NumericalError("ricci_extremes: eigensolver failed");
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(n - 1);
    if (first || lo < out.c) {
      out.c = lo;
      out.argmin = p;
    }
    if (first || hi > out.C) {
      out.C = hi;
      out.argmax = p;
    }
    first = false;

    int a = n - 1;
    while (a >= 0 && ++idx[a] == static_cast<int>(axes[a].size())) idx[a--] = 0;
    if (a < 0) break;
  }
  return out;
}

GeodesicProfile geodesic(const MetricChart& chart, const VectorN& p, const VectorN& v,
                         const GeodesicOptions& opts,
                         const std::function<double(const VectorN&)>& f_eval) {
  const int n = chart.dim;
  if (p.size() != n || v.size() != n) throw ValidationError("geodesic: point/velocity dimension mismatch");
  if (!(opts.length > 0.0)) throw ValidationError("geodesic: length must be positive");
  if (!(opts.step > 0.0)) throw ValidationError("geodesic: step must be positive");
  if (opts.samples < 2) throw ValidationError("geodesic: need at least 2 output samples");

  const double margin = chart.stencil_margin();
  const MatrixN g0 = check_point(chart, p);
  const double speed2 = v.dot(g0 * v);
  if (!(speed2 > 0.0)) throw ValidationError("geodesic: initial velocity must be nonzero");
  const VectorN v0 = v / std::sqrt(speed2);

  struct State {
    VectorN x, v;
  };
  const auto accel = [&](const VectorN& x, const VectorN& vel, VectorN& out_a) -> bool {
    if (!chart.domain.contains(x, margin)) return false;
    const Tensor3 gamma = christoffel(chart, x);
    out_a.resize(n);
    for (int k = 0; k < n; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum += gamma(k, i, j) * vel[i] * vel[j];
      out_a[k] = -sum;
    }
    return true;
  };

  double step = opts.step;
  for (int attempt = 0;; ++attempt) {
    const long n_steps = std::max<long>(1, static_cast<long>(std::ceil(opts.length / step)));
    const double h = opts.length / static_cast<double>(n_steps);

    std::vector<State> path;
    path.reserve(n_steps + 1);
    path.push_back({p, v0});
    bool truncated = false;
    VectorN k1x(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n);
    for (long s = 0; s < n_steps; ++s) {
      const State& cur = path.back();
      bool ok = true;
      k1x = cur.v;
      ok = ok && accel(cur.x, cur.v, k1v);
      if (ok) {
        k2x = cur.v + 0.5 * h * k1v;
        ok = accel(cur.x + 0.5 * h * k1x, k2x, k2v);
      }
      if (ok) {
        k3x = cur.v + 0.5 * h * k2v;
        ok = accel(cur.x + 0.5 * h * k2x, k3x, k3v);
      }
      if (ok) {
        k4x = cur.v + h * k3v;
        ok = accel(cur.x + h * k3x, k4x, k4v);
      }
      State next;
      if (ok) {
        next.x = cur.x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        next.v = cur.v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        ok = chart.domain.contains(next.x, margin);
      }
      if (!ok) {
        truncated = true;
        break;
      }
      path.push_back(std::move(next));
    }
    if (path.size() < 2)
      throw ValidationError("geodesic: curve leaves the chart domain immediately");

    const State& last = path.back();
    const MatrixN g_end = chart.g(last.x);
    const double drift = std::abs(last.v.dot(g_end * last.v) - 1.0);
    if (drift > opts.drift_tol) {
      if (attempt >= opts.max_halvings)
        throw NumericalError("geodesic: unit-speed drift " + std::to_string(drift) +
                             " after " + std::to_string(opts.max_halvings) + " step halvings");
      step *= 0.5;
      continue;
    }

    // Subsample to at most opts.samples outputs, always keeping both ends.
    const long n_nodes = static_cast<long>(path.size());
    std::vector<long> pick;
    if (n_nodes <= opts.samples) {
      for (long i = 0; i < n_nodes; ++i) pick.push_back(i);
    } else {
      long prev = -1;
      for (int i = 0; i < opts.samples; ++i) {
        long idx = static_cast<long>(std::llround(static_cast<double>(i) *
                                                  static_cast<double>(n_nodes - 1) /
                                                  (opts.samples - 1)));
        if (idx <= prev) idx = prev + 1;
        pick.push_back(idx);
        prev = idx;
      }
    }

    GeodesicProfile profile;
    profile.truncated = truncated;
    for (long idx : pick) {
      const State& st = path[idx];
      profile.s.push_back(static_cast<double>(idx) * h);
      const CurvatureBundle b = curvature(chart, st.x);
      profile.ric.push_back(st.v.dot(b.ricci * st.v));
      if (f_eval) profile.f.push_back(f_eval(st.x));
    }
    profile.L = profile.s.back();
    profile.validate();
    return profile;
  }
}

void export_point_set(const MetricChart& chart, const std::vector<VectorN>& points,
                      const std::string& path) {
  CsvTable table;
  for (int a = 0; a < chart.dim; ++a) table.header.push_back("x" + std::to_string(a));
  table.header.insert(table.header.end(), {"scal", "w2_plus", "w2_minus", "tr2", "vol_density"});
  for (const VectorN& p : points) {
    const CurvatureBundle b = curvature(chart, p);
    std::vector<double> row;
    for (int a = 0; a < chart.dim; ++a) row.push_back(p[a]);
    row.insert(row.end(), {b.scalar, b.w2_plus, b.w2_minus, b.tr2, b.vol_density});
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table.header, table.rows);
}

}  // namespace qem
