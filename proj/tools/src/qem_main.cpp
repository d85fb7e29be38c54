// qem: command-line verification surface over the core library.
//
// Subcommands
//   bounds    closed-form oscillation/diameter/topology bounds from (m, lambda, c, C, ...)
//   verify    quasi-Einstein residual statistics on a fixture
//   topology  curvature-integral topology report on a fixture
//   ode       comparison-ODE checks on a geodesic profile
//
// Exit codes: 0 pass, 1 usage error, 2 validation or hypothesis failure,
// 3 internal numerical failure.  Reports are byte-deterministic: fixed field
// order, 12-significant-digit floats.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qem/bounds.hpp"
#include "qem/csv.hpp"
#include "qem/curvature.hpp"
#include "qem/errors.hpp"
#include "qem/fixtures.hpp"
#include "qem/ode.hpp"
#include "qem/parallel.hpp"
#include "qem/profile.hpp"
#include "qem/qe.hpp"
#include "qem/quadrature.hpp"
#include "qem/report.hpp"
#include "qem/topology.hpp"

namespace {

using namespace qem;

// --- Small helpers -----------------------------------------------------------

std::string sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string num(double v) { return format_g12(v); }

struct Stat {
  double max = 0.0;
  double sum = 0.0;
  long n = 0;

  void add(double v) {
    const double a = std::abs(v);
    max = std::max(max, a);
    sum += a;
    ++n;
  }
  double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }

  Report report() const {
    Report r = Report::object();
    r.set("max", max).set("mean", mean());
    return r;
  }
};

std::vector<VectorN> grid_points(const Box& box, int per_axis) {
  const int n = box.dim();
  std::vector<int> idx(n, 0);
  std::vector<VectorN> pts;
  for (;;) {
    VectorN p(n);
    for (int a = 0; a < n; ++a) {
      const double t =
          per_axis == 1 ? 0.5 : static_cast<double>(idx[a]) / static_cast<double>(per_axis - 1);
      p[a] = box.lo[a] + t * (box.hi[a] - box.lo[a]);
    }
    pts.push_back(p);
    int a = n - 1;
    while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
    if (a < 0) break;
  }
  return pts;
}

// Seeded uniform points; the [0,1) mapping uses the raw 53-bit mantissa so the
// stream does not depend on the standard library's distribution internals.
std::vector<VectorN> random_points(const Box& box, int count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  const int n = box.dim();
  std::vector<VectorN> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    VectorN p(n);
    for (int a = 0; a < n; ++a) {
      const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      p[a] = box.lo[a] + t * (box.hi[a] - box.lo[a]);
    }
    pts.push_back(p);
  }
  return pts;
}

// --- Option bundles ----------------------------------------------------------

struct GlobalOpts {
  std::string out;
  double tol = 1e-6;
  int nodes = 0;  // 0 = fixture default
  unsigned long long seed = 0;
};

struct FixtureOpts {
  std::string kind;
  double r = 1.0;
  double side = 2.0 * std::numbers::pi;
  double r1 = 1.0;
  double r2 = 1.0;
  double eps = 0.01;
  double m = 2.0;
  double lambda = 0.0;
  std::string path;
  bool flip = false;
  CLI::Option* m_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
};

void add_fixture_options(CLI::App* cmd, FixtureOpts& fo) {
  cmd->add_option("--fixture", fo.kind,
                  "sphere4 | torus4 | s2xs2 | cp2-fubini-study | perturbed-sphere4 | "
                  "imported-profile")
      ->required();
  cmd->add_option("--r", fo.r, "sphere4 / perturbed-sphere4 radius")->capture_default_str();
  cmd->add_option("--side", fo.side, "torus4 box side")->capture_default_str();
  cmd->add_option("--r1", fo.r1, "s2xs2 first factor radius")->capture_default_str();
  cmd->add_option("--r2", fo.r2, "s2xs2 second factor radius")->capture_default_str();
  cmd->add_option("--eps", fo.eps, "perturbed-sphere4 amplitude (> -1)")->capture_default_str();
  fo.m_opt = cmd->add_option("--m", fo.m, "quasi-Einstein parameter m (inf = soliton limit)")
                 ->capture_default_str();
  fo.lambda_opt =
      cmd->add_option("--lambda", fo.lambda, "candidate lambda (overrides the fixture value)");
  cmd->add_option("--path", fo.path, "imported-profile CSV path");
  cmd->add_flag("--flip-orientation", fo.flip, "reverse the chart orientation");
}

Fixture make_fixture(const FixtureOpts& fo) {
  FixtureSpec spec;
  spec.kind = parse_fixture_kind(fo.kind);
  spec.r = fo.r;
  spec.side = fo.side;
  spec.r1 = fo.r1;
  spec.r2 = fo.r2;
  spec.eps = fo.eps;
  spec.m = fo.m;
  spec.path = fo.path;
  Fixture fx = build_fixture(spec);
  if (fo.flip) fx.chart.orientation = -fx.chart.orientation;
  if (fo.m_opt != nullptr && fo.m_opt->count() > 0 && fx.qe) fx.qe->m = fo.m;
  if (fo.lambda_opt != nullptr && fo.lambda_opt->count() > 0) {
    if (fx.qe) {
      fx.qe->lambda = fo.lambda;
    } else {
      fx.qe = trivial_potential(fo.m, fo.lambda);
    }
  }
  return fx;
}

Report fixture_report(const Fixture& fx) {
  Report r = Report::object();
  r.set("kind", to_string(fx.kind)).set("label", fx.label);
  if (fx.qe) r.set("m", fx.qe->m).set("lambda", fx.qe->lambda);
  if (!fx.qe_note.empty()) r.set("note", fx.qe_note);
  return r;
}

// --- bounds ------------------------------------------------------------------

struct BoundsOpts {
  double m = 2.0;
  double lambda = 1.0;
  double c = 0.0;
  double C = 0.0;
  double fosc = 0.0;
  double d = 0.0;
  double vol = 1.0;
  CLI::Option* c_opt = nullptr;
  CLI::Option* C_opt = nullptr;
  CLI::Option* d_opt = nullptr;
};

bool run_bounds(const BoundsOpts& bo, Report& rep) {
  BoundsInput in;
  in.m = bo.m;
  in.lambda = bo.lambda;
  in.c = bo.c;
  const bool have_C = bo.C_opt->count() > 0;
  // Only the pinching-dependent sections read C; an omitted --C must not
  // invalidate the rest, so it defaults to the vacuous upper bound.
  in.C = have_C ? bo.C : std::numeric_limits<double>::infinity();
  in.f_osc = bo.fosc;
  in.d = bo.d;
  in.vol = bo.vol;
  in.validate();

  rep.set("command", "bounds");
  {
    Report input = Report::object();
    input.set("m", in.m).set("lambda", in.lambda).set("c", in.c);
    if (have_C) input.set("C", in.C);
    input.set("f_osc", in.f_osc).set("d", in.d).set("vol", in.vol);
    rep.set("input", input);
  }

  bool pass = true;
  std::cout << "bounds: m=" << num(in.m) << " lambda=" << num(in.lambda) << " c=" << num(in.c)
            << (have_C ? " C=" + num(in.C) : std::string()) << " f_osc=" << num(in.f_osc)
            << "\n";

  const double dm = d_m(in.m);
  const double osc = osc_bound(in.m);
  const bool osc_ok = in.f_osc <= osc * (1.0 + 1e-12) + 1e-12;
  pass = pass && osc_ok;
  {
    Report r = Report::object();
    r.set("d_m", dm).set("osc_bound", osc).set("f_osc", in.f_osc).set("pass", osc_ok);
    rep.set("oscillation", r);
  }
  std::cout << "  d_m = " << num(dm) << "   osc_bound = " << num(osc) << "   f_osc "
            << (osc_ok ? "<=" : ">") << " bound: " << (osc_ok ? "pass" : "FAIL") << "\n";

  {
    Report r = Report::object();
    double lower = 0.0;
    if (in.lambda > in.c) {
      const double v = diam_lower_cos(in);
      r.set("cos_lower", v);
      lower = std::max(lower, v);
    }
    if (have_C && in.C > in.lambda) {
      const double v = diam_lower_cosh(in);
      r.set("cosh_lower", v);
      lower = std::max(lower, v);
    }
    r.set("lower", lower);
    rep.set("diameter", r);
    std::cout << "  diameter >= " << num(lower) << "\n";
  }

  const bool pinched = have_C && in.c < in.lambda && in.lambda < in.C;
  if (pinched) {
    const HTThresholds th = ht_thresholds(in);
    Report r = Report::object();
    r.set("t1", th.t1).set("t2", th.t2).set("t3", th.t3).set("x0", th.x0);
    r.set("h_residual", th.h_residual);
    rep.set("thresholds", r);
    std::cout << "  thresholds: t1 = " << num(th.t1) << "  t2 = " << num(th.t2)
              << "  t3 = " << num(th.t3) << "  x0 = " << num(th.x0) << "\n";

    if (bo.d_opt->count() > 0 && in.d > 0.0) {
      const MixedOscBound mx = mixed_osc_bound(in);
      pass = pass && mx.ok;
      Report mr = Report::object();
      mr.set("rhs", mx.rhs).set("f_osc_upper", mx.f_osc_upper).set("pass", mx.ok);
      rep.set("mixed", mr);
      std::cout << "  mixed: f_osc_upper = " << num(mx.f_osc_upper) << " ("
                << (mx.ok ? "pass" : "FAIL") << ")\n";
    }
  }

  {
    const HTDefectLower defect = ht_defect_lower(in);
    Report r = Report::object();
    r.set("rhs", defect.rhs).set("volume_term", defect.volume_term).set("paren", defect.paren);
    r.set("below_threshold", defect.below_threshold);
    rep.set("ht_defect", r);
    std::cout << "  ht defect rhs = " << num(defect.rhs)
              << (defect.below_threshold ? "  (oscillation beyond threshold)" : "") << "\n";
  }
  {
    const VolumeBound vb = volume_bound(in);
    Report r = Report::object();
    r.set("max_vol", vb.max_vol).set("unconstrained", vb.unconstrained);
    rep.set("volume_bound", r);
    std::cout << "  volume <= " << (vb.unconstrained ? "unconstrained" : num(vb.max_vol)) << "\n";
  }
  {
    const YamabeBound yb = yamabe_bound(in);
    Report r = Report::object();
    r.set("rhs", yb.rhs).set("vacuous", yb.vacuous);
    rep.set("yamabe_bound", r);
    std::cout << "  yamabe^2 >= " << num(yb.rhs) << (yb.vacuous ? "  (vacuous)" : "") << "\n";
  }

  rep.set("pass", pass);
  std::cout << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
  return pass;
}

// --- verify ------------------------------------------------------------------

struct VerifyOpts {
  FixtureOpts fixture;
  int grid = 5;
  int samples = 0;
};

bool run_verify(const GlobalOpts& g, const VerifyOpts& vo, Report& rep) {
  Fixture fx = make_fixture(vo.fixture);
  if (!fx.qe)
    throw ValidationError("verify: fixture '" + fx.label +
                          "' carries no quasi-Einstein data; pass --lambda to test a "
                          "candidate structure");
  const QEData& qe = *fx.qe;
  qe.validate(fx.chart);

  std::vector<VectorN> pts = grid_points(fx.sample_box, vo.grid);
  if (vo.samples > 0) {
    const auto extra = random_points(fx.sample_box, vo.samples, g.seed);
    pts.insert(pts.end(), extra.begin(), extra.end());
  }

  const bool finite_m = !qe.soliton();
  Stat res_stat, r1_stat, r2_stat, r3_stat, u_stat;
  for (const VectorN& p : pts) {
    res_stat.add(qe_residual(fx.chart, qe, p).norm);
    if (finite_m) {
      const Lemma1Residuals lem = lemma1_residuals(fx.chart, qe, p);
      r1_stat.add(lem.r1);
      r2_stat.add(lem.r2_norm);
      r3_stat.add(lem.r3);
      u_stat.add(u_identity_residual(fx.chart, qe, p));
    }
  }

  GridSpec grid;
  grid.box = fx.sample_box;
  const RicciExtremes ric = ricci_extremes(fx.chart, grid);
  const ScalarBoundCheck scal = scalar_bound_check(fx.chart, qe, grid);

  std::vector<std::string> diagnostics;
  if (qe.lambda > 0.0 && ric.C <= 1e-8)
    diagnostics.push_back("lambda > 0 requires nonzero Ricci");
  const bool expected_fail =
      fx.kind == FixtureKind::PerturbedSphere4 && vo.fixture.eps != 0.0;

  const double tol = g.tol;
  bool pass = res_stat.max <= tol && scal.ok;
  if (finite_m)
    pass = pass && r1_stat.max <= tol && r2_stat.max <= tol && r3_stat.max <= tol &&
           u_stat.max <= tol;

  rep.set("command", "verify");
  rep.set("fixture", fixture_report(fx));
  {
    Report r = Report::object();
    r.set("grid_per_axis", vo.grid).set("points", static_cast<long long>(pts.size()));
    r.set("random_samples", vo.samples).set("seed", static_cast<long long>(g.seed));
    r.set("tol", tol);
    rep.set("sampling", r);
  }
  rep.set("qe_residual", res_stat.report());
  if (finite_m) {
    Report r = Report::object();
    r.set("r1", r1_stat.report()).set("r2", r2_stat.report()).set("r3", r3_stat.report());
    rep.set("lemma1", r);
    rep.set("u_identity", u_stat.report());
  } else {
    rep.set("lemma1", Report::string("skipped: soliton limit (finite m only)"));
    rep.set("u_identity", Report::string("skipped: soliton limit (finite m only)"));
  }
  {
    Report r = Report::object();
    r.set("min", ric.c).set("max", ric.C);
    rep.set("ricci_range", r);
  }
  {
    Report r = Report::object();
    r.set("min_scal", scal.min_scal).set("bound", scal.bound).set("pass", scal.ok);
    rep.set("scalar_bound", r);
  }
  if (!diagnostics.empty()) {
    Report arr = Report::array();
    for (const auto& d : diagnostics) arr.push(Report::string(d));
    rep.set("diagnostics", arr);
  }
  if (expected_fail) rep.set("expected_fail", true);
  rep.set("pass", pass);

  std::cout << "verify: " << fx.label << "  m=" << num(qe.m) << " lambda=" << num(qe.lambda)
            << "  (" << pts.size() << " points)\n";
  std::cout << "  qe_residual   max " << sci3(res_stat.max) << "  mean " << sci3(res_stat.mean())
            << "\n";
  if (finite_m) {
    std::cout << "  lemma1 r1     max " << sci3(r1_stat.max) << "\n";
    std::cout << "  lemma1 r2     max " << sci3(r2_stat.max) << "\n";
    std::cout << "  lemma1 r3     max " << sci3(r3_stat.max) << "\n";
    std::cout << "  u_identity    max " << sci3(u_stat.max) << "\n";
  } else {
    std::cout << "  lemma1 / u_identity skipped (soliton limit)\n";
  }
  std::cout << "  ricci range   [" << num(ric.c) << ", " << num(ric.C) << "]\n";
  std::cout << "  scalar bound  min R " << num(scal.min_scal) << (scal.ok ? " >= " : " < ")
            << num(scal.bound) << "\n";
  for (const auto& d : diagnostics) std::cout << "  diagnostic: " << d << "\n";
  if (expected_fail && !pass) std::cout << "  (failure expected for eps != 0)\n";
  std::cout << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
  return pass;
}

// --- topology ----------------------------------------------------------------

struct TopologyOpts {
  FixtureOpts fixture;
};

bool run_topology(const GlobalOpts& g, const TopologyOpts& to, Report& rep) {
  Fixture fx = make_fixture(to.fixture);
  QuadratureSpec spec = fx.quad;
  if (g.nodes > 0) spec.nodes_per_axis = g.nodes;

  const TopologyReport tr = topology_report(fx.chart, spec, fx.qe ? &*fx.qe : nullptr);
  const IntegralTable& t = tr.integrals;
  const HTCheck ht = ht_check_from(t);
  const GurskyCheck gursky = gursky_check_from(t);
  const YamabeIntegralCheck yamabe = yamabe_integral_check_from(t);

  bool pass = ht.pass;

  rep.set("command", "topology");
  rep.set("fixture", fixture_report(fx));
  {
    Report r = Report::object();
    r.set("nodes_per_axis", spec.nodes_per_axis).set("rule", to_string(spec.rule));
    r.set("compactification", to_string(spec.compactification));
    r.set("orientation", fx.chart.orientation);
    rep.set("quadrature", r);
  }
  {
    Report r = Report::object();
    r.set("vol", t.vol).set("w2_plus", t.w2_plus).set("w2_minus", t.w2_minus);
    r.set("R2", t.R2).set("tr2", t.tr2).set("R", t.R);
    if (t.has_potential) {
      r.set("grad_f2", t.grad_f2).set("R_grad_f2", t.R_grad_f2);
      r.set("grad_R_grad_f", t.grad_R_grad_f).set("f_osc", t.f_osc());
    }
    r.set("min_scal", t.min_scal);
    rep.set("integrals", r);
  }
  {
    Report r = Report::object();
    r.set("chi_hat", tr.chi_hat).set("chi_err_est", tr.chi_err_est);
    r.set("tau_hat", tr.tau_hat).set("tau_err_est", tr.tau_err_est);
    rep.set("invariants", r);
  }

  std::cout << "topology: " << fx.label << "  nodes=" << spec.nodes_per_axis << "/axis";
  if (spec.compactification == Compactification::Tan) std::cout << " (tan)";
  std::cout << "\n";
  std::cout << "  chi_hat = " << num(tr.chi_hat) << "  (err est " << sci3(tr.chi_err_est)
            << ")\n";
  std::cout << "  tau_hat = " << num(tr.tau_hat) << "  (err est " << sci3(tr.tau_err_est)
            << ")\n";

  // Compare against the fixture's expected invariants when present.
  if (const ExpectedValue* e = fx.find_expected("chi")) {
    const double err = std::abs(tr.chi_hat - e->value);
    const bool ok = err <= 1e-2;
    pass = pass && ok;
    Report r = Report::object();
    r.set("expected", e->value).set("abs_err", err).set("pass", ok);
    rep.set("chi_check", r);
    std::cout << "  chi expected " << num(e->value) << "  |err| = " << sci3(err) << "\n";
  }
  if (const ExpectedValue* e = fx.find_expected("tau")) {
    const double expected = fx.chart.orientation < 0 ? -e->value : e->value;
    const double err = std::abs(tr.tau_hat - expected);
    const bool ok = err <= 1e-2;
    pass = pass && ok;
    Report r = Report::object();
    r.set("expected", expected).set("abs_err", err).set("pass", ok);
    rep.set("tau_check", r);
    std::cout << "  tau expected " << num(expected) << "  |err| = " << sci3(err) << "\n";
  }

  {
    Report r = Report::object();
    r.set("two_chi_plus_3tau", ht.ht_plus).set("two_chi_minus_3tau", ht.ht_minus);
    r.set("pass", ht.pass);
    rep.set("ht", r);
    std::cout << "  ht: 2chi+3tau = " << num(ht.ht_plus) << ", 2chi-3tau = " << num(ht.ht_minus)
              << "  " << (ht.pass ? "pass" : "FAIL") << "\n";
  }
  {
    Report r = Report::object();
    r.set("gated", gursky.gated).set("min_scal", gursky.min_scal);
    if (!gursky.gated) {
      r.set("lhs", gursky.lhs).set("mid", gursky.mid).set("rhs", gursky.rhs);
      r.set("ineq1_ok", gursky.ineq1_ok).set("ineq2_ok", gursky.ineq2_ok);
    }
    rep.set("gursky", r);
  }
  {
    Report r = Report::object();
    r.set("identity_lhs", yamabe.identity_lhs).set("identity_rhs", yamabe.identity_rhs);
    r.set("rel_err", yamabe.rel_err).set("pass", yamabe.pass);
    rep.set("yamabe_identity", r);
  }

  if (fx.qe) {
    const QEData& qe = *fx.qe;
    if (std::isfinite(qe.m) && qe.m > 1.0) {
      const Lemma2Check lem = lemma2_check(fx.chart, qe, spec);
      Report r = Report::object();
      r.set("gated", lem.gated);
      if (lem.gated) {
        r.set("gate_reason", lem.gate_reason);
        std::cout << "  lemma2: gated (" << lem.gate_reason << ")\n";
      } else {
        r.set("max_qe_residual", lem.max_qe_residual);
        r.set("lhs", lem.lhs).set("rhs_scal", lem.rhs_scal).set("rhs_grad", lem.rhs_grad);
        r.set("res_scal", lem.res_scal).set("res_grad", lem.res_grad);
        std::cout << "  lemma2: lhs " << num(lem.lhs) << "  res_scal " << sci3(lem.res_scal)
                  << "  res_grad " << sci3(lem.res_grad) << "\n";
      }
      rep.set("lemma2", r);
    } else {
      rep.set("lemma2", Report::string("skipped: requires finite m > 1"));
    }

    if (qe.lambda > 0.0) {
      BoundsInput in;
      in.m = qe.m;
      in.lambda = qe.lambda;
      in.C = std::numeric_limits<double>::infinity();
      in.vol = t.vol;
      in.f_osc = t.f_osc();
      const Prop11Criterion p11 = prop11_criterion(t.R2, in);
      Report r = Report::object();
      r.set("lhs", p11.lhs).set("rhs", p11.rhs).set("pass", p11.pass);
      rep.set("prop11", r);
      std::cout << "  prop11: int R^2 = " << num(p11.lhs) << (p11.pass ? " <= " : " > ")
                << num(p11.rhs) << "\n";

      if (t.has_potential && std::isfinite(qe.m)) {
        const OscfIntegralCheck oscf =
            oscf_integral_check(t.grad_R_grad_f, qe.m, qe.lambda, t.vol, t.f_osc());
        Report r2 = Report::object();
        r2.set("lhs", oscf.lhs).set("rhs", oscf.rhs).set("pass", oscf.ok);
        rep.set("oscf_integral", r2);
      }
    }
  }

  rep.set("pass", pass);
  std::cout << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
  return pass;
}

// --- ode ---------------------------------------------------------------------

struct OdeOpts {
  std::string profile_path;
  double length = 1.0;
  double ric = 0.0;
  int samples = 201;
  double m = 2.0;
  double lambda = 1.0;
  double u0 = 1.0;
  int refine = 10;
  double grad_tol = 1e-3;
};

bool run_ode(const GlobalOpts& g, const OdeOpts& oo, Report& rep) {
  GeodesicProfile prof;
  if (!oo.profile_path.empty()) {
    prof = load_geodesic_profile(oo.profile_path);
  } else {
    if (oo.samples < 2) throw ValidationError("ode: need at least 2 samples");
    for (int i = 0; i < oo.samples; ++i) {
      prof.s.push_back(oo.length * static_cast<double>(i) /
                       static_cast<double>(oo.samples - 1));
      prof.ric.push_back(oo.ric);
    }
    prof.L = oo.length;
    prof.validate();
  }

  if (!(oo.u0 > 0.0)) throw ValidationError("ode: u0 must be positive");
  const double c = prof.ric_min();
  const double C = prof.ric_max();
  const bool finite_m = !std::isinf(oo.m);
  const double inv_m = finite_m ? 1.0 / oo.m : 0.0;

  const ODESolution sol = integrate_u(prof, oo.m, oo.lambda, oo.u0, oo.refine);
  double u_min = sol.u.empty() ? 0.0 : sol.u.front();
  for (double v : sol.u) u_min = std::min(u_min, v);

  bool pass = true;
  rep.set("command", "ode");
  {
    Report r = Report::object();
    if (!oo.profile_path.empty())
      r.set("path", oo.profile_path);
    else
      r.set("synthetic_ric", oo.ric);
    r.set("samples", static_cast<long long>(prof.s.size())).set("L", prof.L);
    r.set("ric_min", c).set("ric_max", C).set("has_f", prof.has_f());
    if (prof.truncated) r.set("truncated", true);
    rep.set("profile", r);
  }
  {
    Report r = Report::object();
    r.set("m", oo.m).set("lambda", oo.lambda).set("u0", oo.u0).set("refine", oo.refine);
    rep.set("input", r);
  }
  {
    Report r = Report::object();
    r.set("u_end", sol.u.back()).set("du_end", sol.du.back()).set("u_min", u_min);
    rep.set("solution", r);
  }

  std::cout << "ode: " << (oo.profile_path.empty() ? "synthetic profile" : oo.profile_path)
            << "  L=" << num(prof.L) << "  ric in [" << num(c) << ", " << num(C) << "]\n";

  const double K = (oo.lambda - c) * inv_m;
  if (K >= 0.0) {
    const EnvelopeCheck ck = cosine_envelope_check(sol, K, g.tol);
    Report r = Report::object();
    r.set("K", K).set("skipped", ck.skipped);
    if (ck.skipped) {
      r.set("reason", ck.reason);
      std::cout << "  cosine envelope: skipped (" << ck.reason << ")\n";
    } else {
      r.set("margin", ck.margin).set("pass", ck.pass);
      pass = pass && ck.pass;
      std::cout << "  cosine envelope: margin " << sci3(ck.margin) << "  "
                << (ck.pass ? "pass" : "FAIL") << "\n";
    }
    rep.set("cosine_envelope", r);
  } else {
    rep.set("cosine_envelope", Report::string("skipped: lambda < min ric"));
    std::cout << "  cosine envelope: skipped (lambda < min ric)\n";
  }

  const double H = (C - oo.lambda) * inv_m;
  if (H >= 0.0) {
    const EnvelopeCheck ck = cosh_envelope_check(sol, H, g.tol);
    Report r = Report::object();
    r.set("H", H).set("margin", ck.margin).set("pass", ck.pass);
    pass = pass && ck.pass;
    rep.set("cosh_envelope", r);
    std::cout << "  cosh envelope:   margin " << sci3(ck.margin) << "  "
              << (ck.pass ? "pass" : "FAIL") << "\n";
  } else {
    rep.set("cosh_envelope", Report::string("skipped: lambda > max ric"));
    std::cout << "  cosh envelope: skipped (lambda > max ric)\n";
  }

  // Wronskian against the frozen-coefficient comparison solution (ric == c).
  const bool cos_regime =
      K <= 0.0 || prof.L < 0.999 * std::numbers::pi / (2.0 * std::sqrt(K));
  if (cos_regime) {
    GeodesicProfile frozen = prof;
    frozen.f.clear();
    std::fill(frozen.ric.begin(), frozen.ric.end(), c);
    const ODESolution ref = integrate_u(frozen, oo.m, oo.lambda, oo.u0, oo.refine);
    const WronskianCheck wk = wronskian_monotonicity(sol, ref, g.tol);
    Report r = Report::object();
    r.set("min_increment", wk.min_increment).set("worst_index", wk.worst_index);
    r.set("pass", wk.pass);
    pass = pass && wk.pass;
    rep.set("wronskian", r);
    std::cout << "  wronskian:       min increment " << sci3(wk.min_increment) << "  "
              << (wk.pass ? "pass" : "FAIL") << "\n";
  } else {
    rep.set("wronskian", Report::string("skipped: outside the cosine regime"));
    std::cout << "  wronskian: skipped (outside the cosine regime)\n";
  }

  if (prof.has_f()) {
    if (finite_m && c < oo.lambda && oo.lambda < C) {
      const MidpointSplitCheck mk =
          midpoint_split_check(prof, oo.m, oo.lambda, c, C, oo.grad_tol, g.tol);
      Report r = Report::object();
      r.set("reversed", mk.reversed).set("mid_s", mk.mid_s);
      r.set("half1_applicable", mk.half1_applicable).set("half2_applicable", mk.half2_applicable);
      if (mk.half1_applicable) {
        r.set("half1_lhs", mk.half1_lhs).set("half1_rhs", mk.half1_rhs);
        r.set("half1_ok", mk.half1_ok);
      }
      if (mk.half2_applicable) {
        r.set("half2_lhs", mk.half2_lhs).set("half2_rhs", mk.half2_rhs);
        r.set("half2_ok", mk.half2_ok);
      }
      r.set("product_checked", mk.product_checked);
      if (mk.product_checked) {
        r.set("product_lhs", mk.product_lhs).set("product_rhs", mk.product_rhs);
        r.set("product_ok", mk.product_ok);
      }
      r.set("pass", mk.pass);
      pass = pass && mk.pass;
      rep.set("midpoint_split", r);
      std::cout << "  midpoint split:  " << (mk.pass ? "pass" : "FAIL") << "\n";
    } else {
      rep.set("midpoint_split",
              Report::string("skipped: requires finite m and c < lambda < C"));
      std::cout << "  midpoint split: skipped (requires finite m and c < lambda < C)\n";
    }
  }

  rep.set("pass", pass);
  std::cout << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-Einstein metric verification toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a config file (same keys; "
                                 "command line overrides file values)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GlobalOpts g;
  app.add_option("--out", g.out, "write the JSON report to this path");
  app.add_option("--tol", g.tol, "pass/fail tolerance")->capture_default_str();
  app.add_option("--nodes", g.nodes, "quadrature nodes per axis (0 = fixture default)")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random point sampling")->capture_default_str();

  BoundsOpts bo;
  CLI::App* cmd_bounds = app.add_subcommand(
      "bounds", "closed-form oscillation, diameter, and topology bounds");
  cmd_bounds->fallthrough();
  cmd_bounds->add_option("--m", bo.m, "quasi-Einstein parameter m (inf = soliton limit)")
      ->required();
  cmd_bounds->add_option("--lambda", bo.lambda, "quasi-Einstein constant (> 0)")->required();
  bo.c_opt = cmd_bounds->add_option("--c", bo.c, "min Ricci eigenvalue")->capture_default_str();
  bo.C_opt = cmd_bounds->add_option("--C", bo.C, "max Ricci eigenvalue");
  cmd_bounds->add_option("--fosc", bo.fosc, "potential oscillation max f - min f")
      ->capture_default_str();
  bo.d_opt = cmd_bounds->add_option("--d", bo.d, "diameter (enables the mixed estimate)");
  cmd_bounds->add_option("--vol", bo.vol, "volume")->capture_default_str();

  VerifyOpts vo;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "quasi-Einstein residual statistics on a fixture");
  cmd_verify->fallthrough();
  add_fixture_options(cmd_verify, vo.fixture);
  cmd_verify->add_option("--grid", vo.grid, "sample grid points per axis")->capture_default_str();
  cmd_verify->add_option("--samples", vo.samples, "extra random sample points")
      ->capture_default_str();

  TopologyOpts to;
  CLI::App* cmd_topology =
      app.add_subcommand("topology", "curvature-integral topology report on a fixture");
  cmd_topology->fallthrough();
  add_fixture_options(cmd_topology, to.fixture);

  OdeOpts oo;
  CLI::App* cmd_ode = app.add_subcommand("ode", "comparison-ODE checks on a geodesic profile");
  cmd_ode->fallthrough();
  cmd_ode->add_option("--profile", oo.profile_path, "geodesic profile CSV (s,ric[,f])");
  cmd_ode->add_option("--length", oo.length, "synthetic profile length")->capture_default_str();
  cmd_ode->add_option("--ric", oo.ric, "synthetic profile constant Ricci value")
      ->capture_default_str();
  cmd_ode->add_option("--samples", oo.samples, "synthetic profile sample count")
      ->capture_default_str();
  cmd_ode->add_option("--m", oo.m, "quasi-Einstein parameter m (inf = soliton limit)")
      ->required();
  cmd_ode->add_option("--lambda", oo.lambda, "quasi-Einstein constant")->required();
  cmd_ode->add_option("--u0", oo.u0, "initial value u(0)")->capture_default_str();
  cmd_ode->add_option("--refine", oo.refine, "RK4 substeps per profile interval")
      ->capture_default_str();
  cmd_ode->add_option("--grad-tol", oo.grad_tol, "critical-endpoint tolerance |f'|")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    Report rep;
    bool pass = false;
    if (cmd_bounds->parsed())
      pass = run_bounds(bo, rep);
    else if (cmd_verify->parsed())
      pass = run_verify(g, vo, rep);
    else if (cmd_topology->parsed())
      pass = run_topology(g, to, rep);
    else
      pass = run_ode(g, oo, rep);

    if (!g.out.empty()) {
      rep.write_file(g.out);
    } else {
      std::cout << "\n" << rep.to_json();
    }
    return pass ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
