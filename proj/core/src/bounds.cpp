#include "qem/bounds.hpp"

#include <algorithm>
#include <numbers>
#include <limits>
#include <string>

#include "qem/errors.hpp"

namespace qem {

namespace {

constexpr double kLn5 = 1.6094379124341003;

void require_finite_m_above_1(double m, const char* what) {
  if (std::isinf(m)) return;  // soliton limit handled by each caller
  if (!(m > 1.0))
    throw ValidationError(std::string(what) + ": requires m > 1 (got m = " + std::to_string(m) +
                          "); the radicand 5 + 8/m - 12/m^2 collapses to 1 at m = 1");
}

double radicand(double m) { return 5.0 + 8.0 / m - 12.0 / (m * m); }

// 5 + 8/m - 12/m^2 - e^{f_osc (m+2)/m}, the parenthesis shared by the
// defect, volume and Yamabe bounds; soliton limit 5 - e^{f_osc}.
double defect_paren(double m, double f_osc) {
  if (std::isinf(m)) return 5.0 - std::exp(f_osc);
  return radicand(m) - std::exp(f_osc * (m + 2.0) / m);
}

// m^2 / ((m-1)(m+3)), the coefficient shared by the same three bounds;
// soliton limit 1.
double defect_coef(double m) {
  if (std::isinf(m)) return 1.0;
  return m * m / ((m - 1.0) * (m + 3.0));
}

void require_pinched(const BoundsInput& in, const char* what) {
  if (!(in.c < in.lambda && in.lambda < in.C))
    throw ValidationError(std::string(what) + ": requires c < lambda < C (got c=" +
                          std::to_string(in.c) + ", lambda=" + std::to_string(in.lambda) +
                          ", C=" + std::to_string(in.C) + ")");
}

}  // namespace

void BoundsInput::validate() const {
  if (std::isnan(m)) throw ValidationError("bounds input: m is NaN");
  if (!(m > 0.0)) throw ValidationError("bounds input: m must be positive (or inf)");
  if (!(lambda > 0.0)) throw ValidationError("bounds input: lambda must be positive");
  if (!(f_osc >= 0.0)) throw ValidationError("bounds input: f_osc must be >= 0");
  if (!(d >= 0.0)) throw ValidationError("bounds input: diameter must be >= 0");
  if (!(vol > 0.0)) throw ValidationError("bounds input: volume must be positive");
  if (!(w2_integral >= 0.0)) throw ValidationError("bounds input: w2_integral must be >= 0");
  if (f_osc > 0.0 && !(c < lambda && lambda < C))
    throw ValidationError(
        "bounds input: a nontrivial structure (f_osc > 0) forces c < lambda < C, got c=" +
        std::to_string(c) + ", lambda=" + std::to_string(lambda) + ", C=" + std::to_string(C));
}

double d_m(double m) {
  require_finite_m_above_1(m, "d_m");
  if (std::isinf(m)) return 1.0;
  return std::pow(radicand(m), 1.0 / (m + 2.0));
}

double osc_bound(double m) {
  require_finite_m_above_1(m, "osc_bound");
  if (std::isinf(m)) return kLn5;
  return (m / (m + 2.0)) * std::log(radicand(m));
}

double diam_lower_cos(const BoundsInput& in) {
  in.validate();
  if (in.f_osc == 0.0) return 0.0;
  if (!(in.lambda > in.c)) throw ValidationError("diam_lower_cos: requires lambda > c");
  if (in.soliton()) return std::sqrt(2.0 * in.f_osc / (in.lambda - in.c));
  return std::sqrt(in.m / (in.lambda - in.c)) * std::acos(std::exp(-in.f_osc / in.m));
}

double diam_lower_cosh(const BoundsInput& in) {
  in.validate();
  if (in.f_osc == 0.0) return 0.0;
  if (!(in.C > in.lambda)) throw ValidationError("diam_lower_cosh: requires C > lambda");
  if (in.soliton()) return std::sqrt(2.0 * in.f_osc / (in.C - in.lambda));
  return std::sqrt(in.m / (in.C - in.lambda)) * std::acosh(std::exp(in.f_osc / in.m));
}

MixedOscBound mixed_osc_bound(const BoundsInput& in) {
  in.validate();
  require_pinched(in, "mixed_osc_bound");
  MixedOscBound out;
  if (in.soliton()) {
    out.rhs = std::numeric_limits<double>::quiet_NaN();
    out.f_osc_upper = (in.C - in.c) * in.d * in.d / 8.0;
    out.ok = in.f_osc <= out.f_osc_upper + 1e-12 * std::max(1.0, out.f_osc_upper);
    return out;
  }
  const double limit = std::numbers::pi * std::sqrt(in.m / (in.lambda - in.c));
  if (!(in.d < limit))
    throw ValidationError("mixed_osc_bound: hypothesis d < pi sqrt(m/(lambda-c)) violated (d=" +
                          std::to_string(in.d) + ", limit=" + std::to_string(limit) + ")");
  const double half = 0.5 * in.d;
  const double kk = (in.lambda - in.c) / in.m;
  const double hh = (in.C - in.lambda) / in.m;
  out.rhs = std::cosh(std::sqrt(hh) * half) / std::cos(std::sqrt(kk) * half);
  out.f_osc_upper = in.m * std::log(out.rhs);
  out.ok = in.f_osc <= out.f_osc_upper + 1e-12 * std::max(1.0, out.f_osc_upper);
  return out;
}

double ht_envelope_H(const BoundsInput& in, double x) {
  require_pinched(in, "ht_envelope_H");
  if (in.soliton()) return std::exp(0.5 * (in.C - in.c) * x * x);
  const double kk = (in.lambda - in.c) / in.m;
  const double hh = (in.C - in.lambda) / in.m;
  const double pole = 0.5 * std::numbers::pi / std::sqrt(kk);
  if (!(x >= 0.0 && x < pole))
    throw ValidationError("ht_envelope_H: x must lie in [0, (pi/2) sqrt(m/(lambda-c)))");
  return std::cosh(std::sqrt(hh) * x) / std::cos(std::sqrt(kk) * x);
}

HTThresholds ht_thresholds(const BoundsInput& in) {
  in.validate();
  require_finite_m_above_1(in.m, "ht_thresholds");
  require_pinched(in, "ht_thresholds");

  HTThresholds out;
  if (in.soliton()) {
    out.t1 = std::sqrt(2.0 * kLn5 / (in.lambda - in.c));
    out.t2 = std::sqrt(2.0 * kLn5 / (in.C - in.lambda));
    out.x0 = std::sqrt(2.0 * kLn5 / (in.C - in.c));
    out.t3 = 2.0 * out.x0;
    out.h_residual = 0.0;
    return out;
  }

  const double dm = d_m(in.m);
  const double kk = (in.lambda - in.c) / in.m;
  const double hh = (in.C - in.lambda) / in.m;
  out.t1 = std::sqrt(in.m / (in.lambda - in.c)) * std::acos(1.0 / dm);
  out.t2 = std::sqrt(in.m / (in.C - in.lambda)) * std::acosh(dm);

  // H(x) = cosh(sqrt(hh) x) sec(sqrt(kk) x) is strictly increasing from 1 to
  // +inf on [0, pole); bisect for H(x0) = D_m.
  const double pole = 0.5 * std::numbers::pi / std::sqrt(kk);
  const auto envelope = [&](double x) {
    return std::cosh(std::sqrt(hh) * x) / std::cos(std::sqrt(kk) * x);
  };
  double lo = 0.0;
  double hi = 0.999999 * pole;
  if (!(envelope(hi) >= dm))
    throw NumericalError("ht_thresholds: envelope fails to reach D_m before the sec pole");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (envelope(mid) < dm)
      lo = mid;
    else
      hi = mid;
  }
  out.x0 = 0.5 * (lo + hi);
  out.t3 = 2.0 * out.x0;
  out.h_residual = std::abs(envelope(out.x0) - dm);
  if (out.h_residual > 1e-10)
    throw NumericalError("ht_thresholds: bisection posterior |H(x0)-D_m| = " +
                         std::to_string(out.h_residual) + " exceeds 1e-10");
  return out;
}

HTDefectLower ht_defect_lower(const BoundsInput& in) {
  in.validate();
  require_finite_m_above_1(in.m, "ht_defect_lower");
  HTDefectLower out;
  out.paren = defect_paren(in.m, in.f_osc);
  out.volume_term = defect_coef(in.m) * in.lambda * in.lambda / 6.0 * in.vol * out.paren;
  out.rhs = in.w2_integral + out.volume_term;
  out.below_threshold = out.paren < 0.0;
  return out;
}

VolumeBound volume_bound(const BoundsInput& in) {
  in.validate();
  require_finite_m_above_1(in.m, "volume_bound");
  VolumeBound out;
  const double paren = defect_paren(in.m, in.f_osc);
  if (!(paren > 0.0)) {
    out.unconstrained = true;
    out.max_vol = std::numeric_limits<double>::infinity();
    return out;
  }
  const double coef = defect_coef(in.m);
  out.max_vol = 96.0 * std::numbers::pi * std::numbers::pi / (in.lambda * in.lambda * coef * paren);
  return out;
}

YamabeBound yamabe_bound(const BoundsInput& in) {
  in.validate();
  require_finite_m_above_1(in.m, "yamabe_bound");
  YamabeBound out;
  const double paren = defect_paren(in.m, in.f_osc);
  out.rhs = 4.0 * defect_coef(in.m) * in.lambda * in.lambda * paren * in.vol;
  out.vacuous = out.rhs < 0.0;
  return out;
}

Prop11Criterion prop11_criterion(double R2_integral, const BoundsInput& in) {
  in.validate();
  require_finite_m_above_1(in.m, "prop11_criterion");
  if (!(R2_integral >= 0.0))
    throw ValidationError("prop11_criterion: integral of R^2 must be >= 0");
  Prop11Criterion out;
  out.lhs = R2_integral;
  const double factor = std::isinf(in.m) ? 24.0 : 24.0 * (in.m + 1.0) / (in.m + 2.0);
  out.rhs = factor * in.lambda * in.lambda * in.vol;
  out.pass = out.lhs <= out.rhs + 1e-9 * std::max(1.0, std::abs(out.rhs));
  return out;
}

}  // namespace qem
