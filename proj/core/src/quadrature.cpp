#include "qem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qem/curvature.hpp"
#include "qem/errors.hpp"
#include "qem/gauss_legendre.hpp"
#include "qem/pairwise.hpp"
#include "qem/parallel.hpp"

namespace qem {

void QuadratureSpec::validate() const {
  if (nodes_per_axis < 8)
    throw ValidationError("quadrature: nodes_per_axis must be >= 8, got " +
                          std::to_string(nodes_per_axis));
  if (truncation < 0.0) throw ValidationError("quadrature: truncation must be >= 0");
}

QuadRule parse_rule(const std::string& name) {
  if (name == "gauss-legendre") return QuadRule::GaussLegendre;
  if (name == "uniform-midpoint") return QuadRule::UniformMidpoint;
  throw ValidationError("quadrature: unknown rule '" + name +
                        "' (expected gauss-legendre or uniform-midpoint)");
}

Compactification parse_compactification(const std::string& name) {
  if (name == "none") return Compactification::None;
  if (name == "tan") return Compactification::Tan;
  throw ValidationError("quadrature: unknown compactification '" + name +
                        "' (expected none or tan)");
}

std::string to_string(QuadRule rule) {
  return rule == QuadRule::GaussLegendre ? "gauss-legendre" : "uniform-midpoint";
}

std::string to_string(Compactification c) {
  return c == Compactification::None ? "none" : "tan";
}

namespace {

// Base rule on [a, b].
QuadAxis base_axis(const QuadratureSpec& spec, double a, double b) {
  QuadAxis axis;
  const int n = spec.nodes_per_axis;
  if (spec.rule == QuadRule::GaussLegendre) {
    const QuadRule1D rule = gauss_legendre(n);
    axis.x.resize(n);
    axis.w.resize(n);
    for (int i = 0; i < n; ++i) {
      axis.x[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
      axis.w[i] = 0.5 * (b - a) * rule.weights[i];
    }
  } else {
    const QuadRule1D rule = uniform_midpoint(n);
    axis.x.resize(n);
    axis.w.resize(n);
    for (int i = 0; i < n; ++i) {
      axis.x[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
      axis.w[i] = 0.5 * (b - a) * rule.weights[i];
    }
  }
  return axis;
}

}  // namespace

std::vector<QuadAxis> build_axes(const MetricChart& chart, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<QuadAxis> axes;
  axes.reserve(chart.dim);
  for (int a = 0; a < chart.dim; ++a) {
    if (spec.compactification == Compactification::Tan) {
      QuadAxis axis = base_axis(spec, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
      for (std::size_t i = 0; i < axis.x.size(); ++i) {
        const double x = std::tan(axis.x[i]);
        axis.w[i] *= 1.0 + x * x;  // sec^2(u) du = dx
        axis.x[i] = x;
      }
      axes.push_back(std::move(axis));
    } else {
      double lo = chart.domain.lo[a];
      double hi = chart.domain.hi[a];
      if (spec.truncation > 0.0) {
        lo = std::max(lo, -spec.truncation);
        hi = std::min(hi, spec.truncation);
        if (!(lo < hi))
          throw ValidationError("quadrature: truncation empties axis " + std::to_string(a));
      }
      axes.push_back(base_axis(spec, lo, hi));
    }
  }
  return axes;
}

namespace {

// Shared slab-parallel tensor-grid sweep.  `per_node` maps a node and its
// total weight to `width` accumulands; partial sums are kept per slab and
// reduced by ordered pairwise summation, so results do not depend on the
// thread count.  Row sums (innermost axis) are themselves pairwise.
template <typename PerNode>
std::vector<double> sweep(const MetricChart& chart, const std::vector<QuadAxis>& axes, int width,
                          const PerNode& per_node) {
  const int n = chart.dim;
  const int n0 = static_cast<int>(axes[0].x.size());
  std::vector<std::vector<double>> partial(n0, std::vector<double>(width, 0.0));

  parallel_for(n0, [&](int i0) {
    std::vector<double>& acc = partial[i0];
    std::vector<int> idx(n, 0);
    VectorN x(n);
    x[0] = axes[0].x[i0];
    const int n_last = static_cast<int>(axes[n - 1].x.size());
    std::vector<double> row(static_cast<std::size_t>(n_last) * width);
    std::vector<double> vals(width);

    // Iterate axes 1..n-2 as an odometer; innermost axis forms a row.
    while (true) {
      for (int a = 1; a + 1 < n; ++a) x[a] = axes[a].x[idx[a]];
      double w_outer = axes[0].w[i0];
      for (int a = 1; a + 1 < n; ++a) w_outer *= axes[a].w[idx[a]];
      for (int k = 0; k < n_last; ++k) {
        x[n - 1] = axes[n - 1].x[k];
        per_node(x, w_outer * axes[n - 1].w[k], vals.data());
        for (int f = 0; f < width; ++f) row[static_cast<std::size_t>(f) * n_last + k] = vals[f];
      }
      for (int f = 0; f < width; ++f)
        acc[f] += pairwise_sum(row.data() + static_cast<std::size_t>(f) * n_last, n_last);

      int a = n - 2;
      while (a >= 1 && ++idx[a] == static_cast<int>(axes[a].x.size())) idx[a--] = 0;
      if (a < 1) break;
    }
  });

  std::vector<double> total(width);
  std::vector<double> slab(n0);
  for (int f = 0; f < width; ++f) {
    for (int i = 0; i < n0; ++i) slab[i] = partial[i][f];
    total[f] = pairwise_sum(slab.data(), n0);
  }
  return total;
}

}  // namespace

double integrate(const MetricChart& chart, const std::function<double(const VectorN&)>& field,
                 const QuadratureSpec& spec) {
  if (!field) throw ValidationError("integrate: field is not set");
  const std::vector<QuadAxis> axes = build_axes(chart, spec);
  const std::vector<double> total =
      sweep(chart, axes, 1, [&](const VectorN& x, double w, double* out) {
        const MatrixN g = check_point(chart, x);
        Eigen::LLT<MatrixN> llt(g);
        double dens = 1.0;
        for (int i = 0; i < chart.dim; ++i) dens *= llt.matrixL()(i, i);
        out[0] = w * dens * field(x);
      });
  return total[0];
}

IntegralTable compute_integrals(const MetricChart& chart, const QuadratureSpec& spec,
                                const QEData* qe) {
  if (qe) qe->validate(chart);
  const std::vector<QuadAxis> axes = build_axes(chart, spec);
  const int n = chart.dim;
  const double h_R = 10.0 * chart.fd_step_effective();

  // Accumuland layout: 0 vol, 1 w2+, 2 w2-, 3 R^2, 4 tr2, 5 R,
  // 6 <gradR,gradf>, 7 R|gradf|^2, 8 |gradf|^2, 9 min R, 10 f_min, 11 f_max.
  // The last three are reduced by min/max, not sums; they ride along in the
  // per-slab partials and are combined separately below.
  constexpr int kSums = 9;
  const std::vector<QuadAxis>& ax = axes;

  const int n0 = static_cast<int>(ax[0].x.size());
  std::vector<std::vector<double>> partial(n0, std::vector<double>(kSums, 0.0));
  std::vector<double> slab_min_scal(n0), slab_f_min(n0), slab_f_max(n0);

  parallel_for(n0, [&](int i0) {
    std::vector<double>& acc = partial[i0];
    double min_scal = std::numeric_limits<double>::infinity();
    double f_min = std::numeric_limits<double>::infinity();
    double f_max = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(n, 0);
    VectorN x(n);
    x[0] = ax[0].x[i0];
    const int n_last = static_cast<int>(ax[n - 1].x.size());
    std::vector<double> row(static_cast<std::size_t>(n_last) * kSums);

    while (true) {
      for (int a = 1; a + 1 < n; ++a) x[a] = ax[a].x[idx[a]];
      double w_outer = ax[0].w[i0];
      for (int a = 1; a + 1 < n; ++a) w_outer *= ax[a].w[idx[a]];

      for (int k = 0; k < n_last; ++k) {
        x[n - 1] = ax[n - 1].x[k];
        const double w = w_outer * ax[n - 1].w[k];
        const CurvatureBundle b = curvature(chart, x);
        const double dv = w * b.vol_density;
        min_scal = std::min(min_scal, b.scalar);

        double grad_f2 = 0.0, r_grad_f2 = 0.0, grad_R_grad_f = 0.0;
        if (qe) {
          const VectorN df = qe->df(x);
          const VectorN df_up = b.g_inv * df;
          const double gf2 = df.dot(df_up);
          grad_f2 = gf2;
          r_grad_f2 = b.scalar * gf2;
          const double f_val = qe->f(x);
          f_min = std::min(f_min, f_val);
          f_max = std::max(f_max, f_val);
          if (gf2 > 0.0) {
            VectorN q = x;
            double dot = 0.0;
            for (int a = 0; a < n; ++a) {
              q[a] = x[a] + h_R;
              const double plus = curvature(chart, q).scalar;
              q[a] = x[a] - h_R;
              const double minus = curvature(chart, q).scalar;
              q[a] = x[a];
              dot += (plus - minus) / (2.0 * h_R) * df_up[a];
            }
            grad_R_grad_f = dot;
          }
        }

        row[0 * n_last + k] = dv;
        row[1 * n_last + k] = dv * b.w2_plus;
        row[2 * n_last + k] = dv * b.w2_minus;
        row[3 * n_last + k] = dv * b.scalar * b.scalar;
        row[4 * n_last + k] = dv * b.tr2;
        row[5 * n_last + k] = dv * b.scalar;
        row[6 * n_last + k] = dv * grad_R_grad_f;
        row[7 * n_last + k] = dv * r_grad_f2;
        row[8 * n_last + k] = dv * grad_f2;
      }
      for (int f = 0; f < kSums; ++f)
        acc[f] += pairwise_sum(row.data() + static_cast<std::size_t>(f) * n_last, n_last);

      int a = n - 2;
      while (a >= 1 && ++idx[a] == static_cast<int>(ax[a].x.size())) idx[a--] = 0;
      if (a < 1) break;
    }
    slab_min_scal[i0] = min_scal;
    slab_f_min[i0] = f_min;
    slab_f_max[i0] = f_max;
  });

  IntegralTable t;
  std::vector<double> slab(n0);
  const auto reduce = [&](int f) {
    for (int i = 0; i < n0; ++i) slab[i] = partial[i][f];
    return pairwise_sum(slab.data(), n0);
  };
  t.vol = reduce(0);
  t.w2_plus = reduce(1);
  t.w2_minus = reduce(2);
  t.R2 = reduce(3);
  t.tr2 = reduce(4);
  t.R = reduce(5);
  t.grad_R_grad_f = reduce(6);
  t.R_grad_f2 = reduce(7);
  t.grad_f2 = reduce(8);
  t.min_scal = *std::min_element(slab_min_scal.begin(), slab_min_scal.end());
  if (qe) {
    t.has_potential = true;
    t.f_min = *std::min_element(slab_f_min.begin(), slab_f_min.end());
    t.f_max = *std::max_element(slab_f_max.begin(), slab_f_max.end());
  }
  return t;
}

}  // namespace qem
