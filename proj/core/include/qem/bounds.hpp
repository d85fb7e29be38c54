#pragma once

#include <cmath>

namespace qem {

// Scalar inputs feeding the closed-form estimates.  m may be infinity, which
// selects the gradient-soliton limit of every formula (the ln 5 forms)
// instead of overflowing the finite-m expressions.
struct BoundsInput {
  double m = 2.0;
  double lambda = 1.0;       // > 0
  double c = 0.0;            // min Ricci eigenvalue
  double C = 0.0;            // max Ricci eigenvalue
  double f_osc = 0.0;        // max f - min f, >= 0
  double d = 0.0;            // diameter, >= 0
  double vol = 1.0;          // > 0
  double w2_integral = 0.0;  // integral of |W|^2, >= 0
  double chi = 0.0;          // Euler characteristic
  double tau = 0.0;          // signature

  bool soliton() const { return std::isinf(m); }
  // Invariants: m > 0 (or inf), lambda > 0, f_osc >= 0, d >= 0, vol > 0,
  // w2_integral >= 0, and c < lambda < C whenever f_osc > 0 (a nontrivial
  // structure forces strict pinching of the Ricci extremes around lambda).
  void validate() const;
};

// D_m = (5 + 8/m - 12/m^2)^{1/(m+2)}; > 1 for m > 1, -> 1 as m -> inf.
// Requires m > 1 (the radicand collapses to 1 at m = 1).
double d_m(double m);

// Oscillation bound: f_osc <= (m/(m+2)) ln(5 + 8/m - 12/m^2) = m ln D_m;
// -> ln 5 as m -> inf.  Requires m > 1.
double osc_bound(double m);

// Diameter lower bound d >= sqrt(m/(lambda-c)) arccos(e^{-f_osc/m}),
// soliton limit sqrt(2 f_osc/(lambda-c)).  Returns 0 when f_osc = 0.
double diam_lower_cos(const BoundsInput& in);

// Diameter lower bound d >= sqrt(m/(C-lambda)) arccosh(e^{f_osc/m}),
// soliton limit sqrt(2 f_osc/(C-lambda)).
double diam_lower_cosh(const BoundsInput& in);

// Mixed estimate: e^{f_osc/m} <= cosh(sqrt((C-lambda)/m) d/2) *
// sec(sqrt((lambda-c)/m) d/2), valid for d < pi sqrt(m/(lambda-c)).
// rhs is that product (NaN in the soliton limit, where it tends to 1);
// f_osc_upper is the implied bound on f_osc — m ln(rhs) for finite m,
// (C-c) d^2/8 in the soliton limit; ok compares in.f_osc against it.
struct MixedOscBound {
  double rhs = 0.0;
  double f_osc_upper = 0.0;
  bool ok = false;
};

MixedOscBound mixed_osc_bound(const BoundsInput& in);

// Three diameter thresholds certifying the Hitchin-Thorpe inequality:
//   t1 = sqrt(m/(lambda-c)) arccos(1/D_m)
//   t2 = sqrt(m/(C-lambda)) arccosh(D_m)
//   t3 = 2 x0, where x0 is the unique root of
//        H(x) = cosh(sqrt((C-lambda)/m) x) sec(sqrt((lambda-c)/m) x) = D_m
//        on (0, (pi/2) sqrt(m/(lambda-c))), found by bisection.
// Soliton limits: sqrt(2 ln5/(lambda-c)), sqrt(2 ln5/(C-lambda)),
// 2 sqrt(2 ln5/(C-c)).  Requires m > 1 and c < lambda < C.
struct HTThresholds {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double x0 = 0.0;          // t3/2
  double h_residual = 0.0;  // |H(x0) - D_m| posterior (0 in the soliton limit)
};

HTThresholds ht_thresholds(const BoundsInput& in);

// The monotone envelope H(x) above; exposed so monotonicity can be verified
// by sampling.  x must lie strictly below the sec pole.
double ht_envelope_H(const BoundsInput& in, double x);

// Euler-characteristic lower bound:
//   8 pi^2 chi >= w2_integral
//     + (m^2 lambda^2 / (6(m-1)(m+3))) vol (5 + 8/m - 12/m^2 - e^{f_osc(m+2)/m}).
// Soliton limit: coefficient lambda^2/6, parenthesis 5 - e^{f_osc}.
// below_threshold marks a negative parenthesis (f_osc beyond the oscillation
// bound), where the estimate is still returned but is weaker than trivial.
struct HTDefectLower {
  double rhs = 0.0;
  double volume_term = 0.0;
  double paren = 0.0;
  bool below_threshold = false;
};

HTDefectLower ht_defect_lower(const BoundsInput& in);

// Volume bound 96 pi^2 / lambda^2 >= (m^2/((m-1)(m+3))) (paren) vol:
// max_vol is the implied upper bound when the parenthesis is positive;
// unconstrained flags the vacuous case.
struct VolumeBound {
  double max_vol = 0.0;
  bool unconstrained = false;
};

VolumeBound volume_bound(const BoundsInput& in);

// Yamabe bound Y(M,[g])^2 >= (4 m^2 lambda^2/((m-1)(m+3))) (paren) vol;
// vacuous (and flagged) when the right-hand side is negative.
struct YamabeBound {
  double rhs = 0.0;
  bool vacuous = false;
};

YamabeBound yamabe_bound(const BoundsInput& in);

// Integral criterion: integral R^2 <= (24(m+1)/(m+2)) lambda^2 vol.
// m -> inf threshold: 24 lambda^2 vol.
struct Prop11Criterion {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

Prop11Criterion prop11_criterion(double R2_integral, const BoundsInput& in);

}  // namespace qem
