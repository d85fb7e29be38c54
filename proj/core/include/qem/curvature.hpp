#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qem/metric_chart.hpp"
#include "qem/profile.hpp"
#include "qem/tensor.hpp"

namespace qem {

// Everything the curvature engine knows about one point of one chart.
// Index conventions, fixed throughout:
//   christoffel(k,i,j)  = Gamma^k_{ij}
//   riemann(i,j,k,l)    = R_{ijkl} = <R(e_i,e_j)e_l, e_k> with the sign fixed
//                         so that a space form of sectional curvature kappa
//                         gives R_{ijkl} = kappa (g_{ik} g_{jl} - g_{il} g_{jk}).
//   ricci_{ij}          = g^{kl} R_{ikjl}   (so the unit round sphere has Ric = (n-1) g)
struct CurvatureBundle {
  VectorN point;
  MatrixN g;
  MatrixN g_inv;
  Tensor3 christoffel;
  Tensor4 riemann;
  MatrixN ricci;
  MatrixN ricci_endo;       // Ric with one index raised: g^{ik} ric_{kj}
  double scalar = 0.0;
  MatrixN traceless_ricci;  // ric - (scalar/n) g
  Tensor4 weyl;             // fully covariant; zero tensor when n < 3
  double vol_density = 0.0; // sqrt(det g)

  // Self-dual / anti-self-dual Weyl spectra, ascending.  Only meaningful in
  // dimension 4 (has_weyl_split == true); zero-filled otherwise.
  bool has_weyl_split = false;
  Eigen::Vector3d wplus_eigs = Eigen::Vector3d::Zero();
  Eigen::Vector3d wminus_eigs = Eigen::Vector3d::Zero();

  double w2_plus = 0.0;     // |W+|^2 = sum of squared eigenvalues
  double w2_minus = 0.0;    // |W-|^2
  double w2 = 0.0;          // |W|^2 (n=4: w2_plus + w2_minus; general n: full contraction)
  double tr2 = 0.0;         // |traceless Ricci|^2 = ric0^i_j ric0^j_i
};

// Christoffel symbols alone (cheaper than the full bundle).
Tensor3 christoffel(const MetricChart& chart, const VectorN& p);

// Full pointwise curvature data.  Throws ValidationError for points outside
// the chart domain (including the finite-difference stencil margin) and
// NumericalError if the metric fails to be positive definite there.
CurvatureBundle curvature(const MetricChart& chart, const VectorN& p);

// --- Ricci eigenvalue extremes over a sample grid --------------------------

struct GridSpec {
  int per_axis = 9;          // sample points per coordinate axis
  double margin_frac = 0.0;  // fraction of each extent kept clear at both ends
  std::optional<Box> box;    // scan region; defaults to the chart domain
};

struct RicciExtremes {
  double c = 0.0;  // smallest eigenvalue of the Ricci endomorphism seen
  double C = 0.0;  // largest
  VectorN argmin;  // witness points
  VectorN argmax;
};

// Scans a tensor grid over the chart domain (shrunk by margin_frac plus the
// chart's own stencil margin) and returns the extreme eigenvalues of the
// Ricci endomorphism together with witness points.  Deterministic: ties keep
// the first grid point in iteration order.
RicciExtremes ricci_extremes(const MetricChart& chart, const GridSpec& grid = {});

// --- Geodesics --------------------------------------------------------------

struct GeodesicOptions {
  double length = 1.0;       // requested arclength
  double step = 1e-2;        // initial RK4 step
  int samples = 256;         // output samples (equispaced in arclength)
  double drift_tol = 1e-6;   // |g(v,v) - 1| tolerance at the far end
  int max_halvings = 14;
};

// Integrates the geodesic equation x'' = -Gamma(x', x') from p with initial
// velocity v (normalized internally to unit speed).  The step is halved until
// the unit-speed drift at the end is below drift_tol; if the curve exits the
// chart domain the profile is truncated and flagged.  When f_eval is given,
// f(gamma(s)) is sampled alongside Ric(gamma', gamma').
GeodesicProfile geodesic(const MetricChart& chart, const VectorN& p, const VectorN& v,
                         const GeodesicOptions& opts,
                         const std::function<double(const VectorN&)>& f_eval = nullptr);

// --- Point-set export -------------------------------------------------------

// Writes one CSV row per point: coordinates, then scalar curvature, |W+|^2,
// |W-|^2, |traceless Ricci|^2, and sqrt(det g).
void export_point_set(const MetricChart& chart, const std::vector<VectorN>& points,
                      const std::string& path);

}  // namespace qem
