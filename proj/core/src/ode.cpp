#include "qem/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qem/errors.hpp"

namespace qem {

namespace {

// Linear interpolation of ric between profile samples; callers guarantee
// seg < s.size()-1 and s within [s_seg, s_seg+1].
double ric_interp(const GeodesicProfile& p, std::size_t seg, double s) {
  const double t = (s - p.s[seg]) / (p.s[seg + 1] - p.s[seg]);
  return p.ric[seg] + t * (p.ric[seg + 1] - p.ric[seg]);
}

GeodesicProfile reversed_profile(const GeodesicProfile& p) {
  GeodesicProfile out;
  const std::size_t n = p.s.size();
  out.s.reserve(n);
  out.ric.reserve(n);
  if (p.has_f()) out.f.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    out.s.push_back(p.L - p.s[j]);
    out.ric.push_back(p.ric[j]);
    if (p.has_f()) out.f.push_back(p.f[j]);
  }
  out.L = p.L;
  out.truncated = p.truncated;
  return out;
}

// One-sided 3-point derivative estimate at the first sample.
double front_derivative(const std::vector<double>& s, const std::vector<double>& y) {
  if (s.size() < 3) return (y[1] - y[0]) / (s[1] - s[0]);
  const double h1 = s[1] - s[0];
  const double h2 = s[2] - s[0];
  // Fit y(0) + a t + b t^2 through the first three samples.
  const double d1 = (y[1] - y[0]) / h1;
  const double d2 = (y[2] - y[0]) / h2;
  return (d1 * h2 - d2 * h1) / (h2 - h1);
}

}  // namespace

ODESolution integrate_u(const GeodesicProfile& profile, double m, double lambda, double u0,
                        int refine) {
  profile.validate();
  if (std::isnan(m) || !(m > 0.0))
    throw ValidationError("integrate_u: m must be positive (or inf)");
  if (!(u0 > 0.0)) throw ValidationError("integrate_u: u0 must be positive");
  if (refine < 1) throw ValidationError("integrate_u: refine must be >= 1");

  const double inv_m = std::isinf(m) ? 0.0 : 1.0 / m;
  ODESolution sol;
  sol.u0 = u0;
  sol.s.push_back(0.0);
  sol.u.push_back(u0);
  sol.du.push_back(0.0);

  double u = u0, w = 0.0;
  for (std::size_t seg = 0; seg + 1 < profile.s.size(); ++seg) {
    const double h = (profile.s[seg + 1] - profile.s[seg]) / refine;
    for (int k = 0; k < refine; ++k) {
      const double s0 = profile.s[seg] + k * h;
      const auto q = [&](double s) { return (lambda - ric_interp(profile, seg, s)) * inv_m; };
      const double k1u = w, k1w = -q(s0) * u;
      const double k2u = w + 0.5 * h * k1w, k2w = -q(s0 + 0.5 * h) * (u + 0.5 * h * k1u);
      const double k3u = w + 0.5 * h * k2w, k3w = -q(s0 + 0.5 * h) * (u + 0.5 * h * k2u);
      const double k4u = w + h * k3w, k4w = -q(s0 + h) * (u + h * k3u);
      u += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
      sol.s.push_back(k == refine - 1 ? profile.s[seg + 1] : s0 + h);
      sol.u.push_back(u);
      sol.du.push_back(w);
    }
  }

  // In the cosine regime the comparison solution u0 cos(sqrt(K) s) is still
  // positive at L, so u must be as well.
  const double K = (lambda - profile.ric_min()) * inv_m;
  const bool cosine_regime =
      K <= 0.0 || profile.L < 0.5 * std::numbers::pi / std::sqrt(K);
  if (cosine_regime) {
    for (double ui : sol.u)
      if (!(ui > 0.0))
        throw NumericalError("integrate_u: u lost positivity inside the cosine regime");
  }
  return sol;
}

EnvelopeCheck cosine_envelope_check(const ODESolution& sol, double K, double tol) {
  if (sol.s.size() < 2) throw ValidationError("cosine_envelope_check: empty solution");
  if (K < 0.0) throw ValidationError("cosine_envelope_check: K must be >= 0");
  EnvelopeCheck out;
  const double L = sol.s.back();
  if (K > 0.0 && !(L < 0.5 * std::numbers::pi / std::sqrt(K))) {
    out.skipped = true;
    out.reason = "length L exceeds the cosine regime pi/(2 sqrt(K)); estimate immediate there";
    return out;
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sol.s.size(); ++i)
    margin = std::min(margin, sol.u[i] - sol.u0 * std::cos(std::sqrt(K) * sol.s[i]));
  out.margin = margin;
  out.pass = margin >= -tol;
  return out;
}

EnvelopeCheck cosh_envelope_check(const ODESolution& sol, double H, double tol) {
  if (sol.s.size() < 2) throw ValidationError("cosh_envelope_check: empty solution");
  if (H < 0.0) throw ValidationError("cosh_envelope_check: H must be >= 0");
  EnvelopeCheck out;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sol.s.size(); ++i)
    margin = std::min(margin, sol.u0 * std::cosh(std::sqrt(H) * sol.s[i]) - sol.u[i]);
  out.margin = margin;
  out.pass = margin >= -tol;
  return out;
}

WronskianCheck wronskian_monotonicity(const ODESolution& u, const ODESolution& v, double tol) {
  if (u.s.size() != v.s.size())
    throw ValidationError("wronskian_monotonicity: solutions sampled on different grids");
  const std::size_t n = u.s.size();
  if (n < 3) throw ValidationError("wronskian_monotonicity: need at least 3 samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(u.s[i] - v.s[i]) > 1e-12)
      throw ValidationError("wronskian_monotonicity: grid mismatch at sample " +
                            std::to_string(i));
    if (!(v.u[i] > 0.0))
      throw ValidationError("wronskian_monotonicity: v must be positive on the grid (sample " +
                            std::to_string(i) + ")");
  }
  WronskianCheck out;
  out.min_increment = std::numeric_limits<double>::infinity();
  double prev = u.du[0] * v.u[0] - v.du[0] * u.u[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double w = u.du[i] * v.u[i] - v.du[i] * u.u[i];
    const double inc = w - prev;
    if (inc < out.min_increment) {
      out.min_increment = inc;
      out.worst_index = static_cast<int>(i);
    }
    prev = w;
  }
  out.pass = out.min_increment >= -tol;
  return out;
}

MidpointSplitCheck midpoint_split_check(const GeodesicProfile& profile, double m, double lambda,
                                        double c, double C, double grad_tol, double tol) {
  profile.validate();
  if (!profile.has_f())
    throw ValidationError("midpoint_split_check: profile carries no f samples");
  if (std::isinf(m))
    throw ValidationError("midpoint_split_check: requires finite m");
  if (!(m > 0.0)) throw ValidationError("midpoint_split_check: m must be positive");
  if (!(c < lambda && lambda < C))
    throw ValidationError("midpoint_split_check: requires c < lambda < C");

  const double kk = (lambda - c) / m;
  const double hh = (C - lambda) / m;
  const double pole = 0.5 * std::numbers::pi / std::sqrt(kk);
  if (!(0.5 * profile.L < pole))
    throw ValidationError("midpoint_split_check: L/2 must stay below the sec pole "
                          "(pi/2) sqrt(m/(lambda-c))");

  MidpointSplitCheck out;
  GeodesicProfile p = profile;
  if (p.f.front() > p.f.back()) {
    p = reversed_profile(p);
    out.reversed = true;
  }

  // Midpoint sample: first index minimizing |s - L/2|.
  std::size_t mid = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.s.size(); ++i) {
    const double dist = std::abs(p.s[i] - 0.5 * p.L);
    if (dist < best) {
      best = dist;
      mid = i;
    }
  }
  out.mid_s = p.s[mid];

  const double df_front = front_derivative(p.s, p.f);
  const GeodesicProfile rev = reversed_profile(p);
  const double df_back = front_derivative(rev.s, rev.f);
  out.half1_applicable = std::abs(df_front) <= grad_tol;
  out.half2_applicable = std::abs(df_back) <= grad_tol;

  if (out.half1_applicable) {
    out.half1_lhs = std::exp((p.f[mid] - p.f.front()) / m);
    out.half1_rhs = 1.0 / std::cos(std::sqrt(kk) * p.s[mid]);
    out.half1_ok = out.half1_lhs <= out.half1_rhs + tol;
  }
  if (out.half2_applicable) {
    out.half2_lhs = std::exp((p.f.back() - p.f[mid]) / m);
    out.half2_rhs = std::cosh(std::sqrt(hh) * (p.L - p.s[mid]));
    out.half2_ok = out.half2_lhs <= out.half2_rhs + tol;
  }
  out.product_checked = out.half1_applicable && out.half2_applicable;
  if (out.product_checked) {
    out.product_lhs = std::exp((p.f.back() - p.f.front()) / m);
    out.product_rhs = std::cosh(std::sqrt(hh) * 0.5 * p.L) / std::cos(std::sqrt(kk) * 0.5 * p.L);
    out.product_ok = out.product_lhs <= out.product_rhs + tol;
  }

  out.pass = (!out.half1_applicable || out.half1_ok) && (!out.half2_applicable || out.half2_ok) &&
             (!out.product_checked || out.product_ok);
  return out;
}

}  // namespace qem
