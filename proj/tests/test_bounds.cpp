// Closed-form estimates: oscillation bound, diameter bounds, the
// Hitchin-Thorpe thresholds and defect, volume/Yamabe bounds, and the
// integral criterion.  Golden values are frozen from an independent
// high-precision evaluation of the same formulas.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "qem/bounds.hpp"
#include "qem/errors.hpp"

using namespace qem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

BoundsInput pinched(double m) {
  BoundsInput in;
  in.m = m;
  in.lambda = 1.0;
  in.c = 0.0;
  in.C = 2.0;
  return in;
}

BoundsInput unit_sphere(double m) {
  BoundsInput in;
  in.m = m;
  in.lambda = 3.0;
  in.c = 3.0 - 1e-9;  // vanishing pinching: the Einstein case
  in.C = kInf;
  in.f_osc = 0.0;
  in.vol = 8.0 * kPi * kPi / 3.0;
  in.w2_integral = 0.0;
  in.chi = 2.0;
  in.tau = 0.0;
  return in;
}

}  // namespace

TEST_CASE("d_m and the oscillation bound match golden values") {
  CHECK(d_m(2.0) == doctest::Approx(1.5650845800732873).epsilon(1e-12));
  CHECK(osc_bound(2.0) == doctest::Approx(0.8958797346140275).epsilon(1e-12));
  CHECK(osc_bound(3.0) == doctest::Approx(1.1074960142989985).epsilon(1e-12));
  // Soliton limit: D_m -> 1, m ln D_m -> ln 5.
  CHECK(d_m(kInf) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(osc_bound(kInf) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(std::abs(osc_bound(1e6) - std::log(5.0)) < 1e-5);
}

TEST_CASE("the oscillation bound increases with m") {
  double prev = 0.0;
  for (double m : {1.1, 1.5, 2.0, 3.0, 10.0, 100.0, 1e4}) {
    const double cur = osc_bound(m);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(prev < std::log(5.0));
}

TEST_CASE("m = 1 and below are rejected") {
  CHECK_THROWS_AS(d_m(1.0), ValidationError);
  CHECK_THROWS_AS(d_m(0.5), ValidationError);
  CHECK_THROWS_AS(osc_bound(1.0), ValidationError);
  CHECK_THROWS_AS(ht_thresholds(pinched(1.0)), ValidationError);
}

TEST_CASE("input validation enforces the documented invariants") {
  BoundsInput in = pinched(2.0);
  in.lambda = 0.0;
  CHECK_THROWS_AS(in.validate(), ValidationError);
  in = pinched(2.0);
  in.vol = 0.0;
  CHECK_THROWS_AS(in.validate(), ValidationError);
  in = pinched(2.0);
  in.f_osc = -0.1;
  CHECK_THROWS_AS(in.validate(), ValidationError);
  // Nontrivial oscillation forces strict pinching c < lambda < C.
  in = pinched(2.0);
  in.f_osc = 0.5;
  in.c = 1.5;
  CHECK_THROWS_AS(in.validate(), ValidationError);
  in = pinched(2.0);
  in.f_osc = 0.5;
  CHECK_NOTHROW(in.validate());
}

TEST_CASE("diameter lower bounds: golden values and soliton limits") {
  BoundsInput in = pinched(2.0);
  in.f_osc = 2.0 * std::log(2.0);
  // sqrt(2) arccos(1/2) = sqrt(2) pi/3.
  CHECK(diam_lower_cos(in) == doctest::Approx(1.4809609793861221).epsilon(1e-12));
  CHECK(diam_lower_cos(in) == doctest::Approx(std::sqrt(2.0) * kPi / 3.0).epsilon(1e-14));
  // sqrt(2) arccosh(2).
  CHECK(diam_lower_cosh(in) == doctest::Approx(1.8624597189054244).epsilon(1e-12));

  in.f_osc = 0.0;
  CHECK(diam_lower_cos(in) == doctest::Approx(0.0).scale(1.0));

  BoundsInput sol = pinched(kInf);
  sol.f_osc = 0.5;
  CHECK(diam_lower_cos(sol) == doctest::Approx(std::sqrt(2.0 * 0.5 / 1.0)).epsilon(1e-13));
  CHECK(diam_lower_cosh(sol) == doctest::Approx(std::sqrt(2.0 * 0.5 / 1.0)).epsilon(1e-13));
}

TEST_CASE("mixed oscillation estimate reproduces the frozen product") {
  BoundsInput in = pinched(2.0);
  in.d = 2.0;
  const MixedOscBound mx = mixed_osc_bound(in);
  CHECK(mx.rhs == doctest::Approx(1.6581398162780376).epsilon(1e-12));
  CHECK(mx.f_osc_upper == doctest::Approx(2.0 * std::log(mx.rhs)).epsilon(1e-13));
  CHECK(mx.ok);  // f_osc = 0 is below any positive upper bound

  // At d = 1 the implied bound is 2 ln(cosh(1/sqrt(8)) sec(1/sqrt(8))) ~ 0.25;
  // an oscillation of 0.3 violates it.
  BoundsInput tight = pinched(2.0);
  tight.d = 1.0;
  const MixedOscBound tx = mixed_osc_bound(tight);
  CHECK(tx.f_osc_upper == doctest::Approx(0.2501738785630087).epsilon(1e-10));
  tight.f_osc = 0.2;
  CHECK(mixed_osc_bound(tight).ok);
  tight.f_osc = 0.3;
  CHECK_FALSE(mixed_osc_bound(tight).ok);

  // Soliton limit: f_osc_upper = (C - c) d^2 / 8.
  BoundsInput sol = pinched(kInf);
  sol.d = 2.0;
  const MixedOscBound sx = mixed_osc_bound(sol);
  CHECK(sx.f_osc_upper == doctest::Approx(2.0 * 4.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("hitchin-thorpe thresholds match golden values at (2, 1, 0, 2)") {
  const HTThresholds th = ht_thresholds(pinched(2.0));
  CHECK(th.t1 == doctest::Approx(1.2412167338690321).epsilon(1e-12));
  CHECK(th.t2 == doctest::Approx(1.4403734777509904).epsilon(1e-12));
  CHECK(th.x0 == doctest::Approx(0.9423090607566422).epsilon(1e-12));
  CHECK(th.t3 == doctest::Approx(1.8846181215132844).epsilon(1e-12));
  CHECK(th.t3 == doctest::Approx(2.0 * th.x0).epsilon(1e-15));
  CHECK(th.h_residual <= 1e-10);
}

TEST_CASE("the bisection envelope H is monotone on the search interval") {
  const BoundsInput in = pinched(2.0);
  const double x_max = 0.999 * 0.5 * kPi * std::sqrt(in.m / (in.lambda - in.c));
  double prev = ht_envelope_H(in, 1e-6);
  for (int i = 1; i <= 50; ++i) {
    const double x = x_max * i / 50.0;
    const double cur = ht_envelope_H(in, x);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("soliton thresholds take the logarithmic closed forms") {
  const HTThresholds sol = ht_thresholds(pinched(kInf));
  const double ln5 = std::log(5.0);
  CHECK(sol.t1 == doctest::Approx(std::sqrt(2.0 * ln5)).epsilon(1e-12));
  CHECK(sol.t1 == doctest::Approx(1.7941225779941015).epsilon(1e-12));
  CHECK(sol.t2 == doctest::Approx(std::sqrt(2.0 * ln5)).epsilon(1e-12));
  CHECK(sol.t3 == doctest::Approx(2.0 * std::sqrt(2.0 * ln5 / 2.0)).epsilon(1e-12));
  CHECK(sol.h_residual == 0.0);

  // m = 1e6 approaches the same forms within 1e-3 relative.
  const HTThresholds big = ht_thresholds(pinched(1e6));
  CHECK(std::abs(big.t1 / sol.t1 - 1.0) < 1e-3);
  CHECK(std::abs(big.t2 / sol.t2 - 1.0) < 1e-3);
  CHECK(std::abs(big.t3 / sol.t3 - 1.0) < 1e-3);
}

TEST_CASE("unit-sphere data closes the defect bound at 16 pi^2 exactly") {
  for (double m : {1.5, 2.0, 5.0, 10.0, 100.0}) {
    const HTDefectLower defect = ht_defect_lower(unit_sphere(m));
    // rhs = 8 pi^2 chi(S^4) = 16 pi^2: equality iff f is constant.
    CHECK(defect.rhs == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-10));
    CHECK_FALSE(defect.below_threshold);
  }
  const HTDefectLower sol = ht_defect_lower(unit_sphere(kInf));
  CHECK(sol.rhs == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("oscillation beyond the threshold flags a vacuous defect bound") {
  BoundsInput in = pinched(2.0);
  in.f_osc = osc_bound(2.0) * 0.9999;
  CHECK_FALSE(ht_defect_lower(in).below_threshold);
  in.f_osc = osc_bound(2.0) * 1.01;
  const HTDefectLower defect = ht_defect_lower(in);
  CHECK(defect.below_threshold);
  CHECK(defect.paren < 0.0);
}

TEST_CASE("volume bound equality reproduces the unit sphere volume") {
  for (double m : {1.5, 2.0, 5.0, 10.0, 1e4}) {
    const VolumeBound vb = volume_bound(unit_sphere(m));
    CHECK_FALSE(vb.unconstrained);
    CHECK(vb.max_vol == doctest::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-10));
  }
  // Oscillation past the threshold leaves the volume unconstrained.
  BoundsInput loose = pinched(2.0);
  loose.f_osc = osc_bound(2.0) * 1.05;
  CHECK(volume_bound(loose).unconstrained);
}

TEST_CASE("yamabe bound equality gives 384 pi^2 for the squared invariant") {
  for (double m : {1.5, 2.0, 5.0, 10.0}) {
    const YamabeBound yb = yamabe_bound(unit_sphere(m));
    CHECK_FALSE(yb.vacuous);
    // 16 lambda^2 vol = 16 * 9 * 8 pi^2 / 3 = 384 pi^2.
    CHECK(yb.rhs == doctest::Approx(384.0 * kPi * kPi).epsilon(1e-10));
  }
  BoundsInput loose = pinched(2.0);
  loose.f_osc = osc_bound(2.0) * 1.05;
  CHECK(yamabe_bound(loose).vacuous);
}

TEST_CASE("integral criterion passes on sphere data and rejects inflation") {
  for (double m : {1.5, 2.0, 5.0, 10.0, 1e5}) {
    BoundsInput in = unit_sphere(m);
    const double r2_integral = 144.0 * in.vol;  // R = 12 on the unit sphere
    const Prop11Criterion crit = prop11_criterion(r2_integral, in);
    CHECK(crit.lhs == doctest::Approx(r2_integral).epsilon(1e-14));
    CHECK(crit.rhs == doctest::Approx(24.0 * (m + 1.0) / (m + 2.0) * 9.0 * in.vol)
                          .epsilon(1e-12));
    CHECK(crit.pass);
    CHECK_FALSE(prop11_criterion(crit.rhs * 1.01, in).pass);
  }
  // Soliton threshold: 24 lambda^2 vol.
  BoundsInput sol = unit_sphere(kInf);
  const Prop11Criterion crit = prop11_criterion(0.0, sol);
  CHECK(crit.rhs == doctest::Approx(24.0 * 9.0 * sol.vol).epsilon(1e-12));
}
