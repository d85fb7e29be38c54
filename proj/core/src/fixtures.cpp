#include "qem/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <utility>

#include "qem/bounds.hpp"
#include "qem/csv.hpp"
#include "qem/errors.hpp"
#include "qem/jet2.hpp"
#include "qem/spline.hpp"

namespace qem {

namespace {

constexpr double kPi = std::numbers::pi;

using Jet = Jet2<4>;

template <typename T>
T sq(const T& x) {
  return x * x;
}

// --- Analytic metrics, written once over a generic scalar -------------------
//
// Each metric is a small value struct with a templated fill(coords, g).
// Evaluated on doubles it gives g itself; evaluated on second-order jets it
// gives dg and d2g exactly (no truncation error), which is what the
// analytic-derivative chart path requires.

// Round S^4 of radius r in the stereographic chart over R^4:
//   g = (4 r^2 / (1 + |y|^2)^2) delta.
struct SphereMetric {
  double r = 1.0;

  template <typename T>
  void fill(const std::array<T, 4>& y, T (&g)[4][4]) const {
    const T t = 1.0 + sq(y[0]) + sq(y[1]) + sq(y[2]) + sq(y[3]);
    const T c = (4.0 * r * r) / (t * t);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = (i == j) ? c : T(0.0);
  }
};

// Conformal perturbation (1 + eps/(1 + |y|^2)) of the round sphere.  The
// factor extends smoothly over the missing point (value 1 there), so for
// eps > -1 this is a genuine metric on S^4; it is Einstein only at eps = 0.
struct PerturbedSphereMetric {
  double r = 1.0;
  double eps = 0.0;

  template <typename T>
  void fill(const std::array<T, 4>& y, T (&g)[4][4]) const {
    const T t = 1.0 + sq(y[0]) + sq(y[1]) + sq(y[2]) + sq(y[3]);
    const T c = (1.0 + eps / t) * ((4.0 * r * r) / (t * t));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = (i == j) ? c : T(0.0);
  }
};

// S^2(r1) x S^2(r2), each factor in its own stereographic chart:
//   g = diag(c1, c1, c2, c2),  c_i = 4 r_i^2 / (1 + |u_i|^2)^2.
struct S2xS2Metric {
  double r1 = 1.0;
  double r2 = 1.0;

  template <typename T>
  void fill(const std::array<T, 4>& u, T (&g)[4][4]) const {
    const T t1 = 1.0 + sq(u[0]) + sq(u[1]);
    const T t2 = 1.0 + sq(u[2]) + sq(u[3]);
    const T c1 = (4.0 * r1 * r1) / (t1 * t1);
    const T c2 = (4.0 * r2 * r2) / (t2 * t2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = T(0.0);
    g[0][0] = c1;
    g[1][1] = c1;
    g[2][2] = c2;
    g[3][3] = c2;
  }
};

// CP^2 with the Fubini-Study metric in one affine chart z = (z1, z2), real
// coordinates (x1, y1, x2, y2) with z_k = x_k + i y_k, normalized so that
// Ric = 6 g:
//   h_kl = d_k d_lbar log(1 + |z|^2) = delta_kl / rho - zbar_k z_l / rho^2,
//   rho = 1 + |z|^2, and g is the real bilinear form Re h:
//     g(dx_k, dx_l) = g(dy_k, dy_l) = Re h_kl,  g(dx_k, dy_l) = Im h_kl.
// The coordinate order (x1, y1, x2, y2) fixes the complex orientation.
struct Cp2Metric {
  template <typename T>
  void fill(const std::array<T, 4>& p, T (&g)[4][4]) const {
    const T x[2] = {p[0], p[2]};
    const T y[2] = {p[1], p[3]};
    const T rho = 1.0 + sq(p[0]) + sq(p[1]) + sq(p[2]) + sq(p[3]);
    const T rho2 = rho * rho;
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) {
        T re = T(0.0) - (x[k] * x[l] + y[k] * y[l]) / rho2;
        if (k == l) re = re + 1.0 / rho;
        const T im = (y[k] * x[l] - x[k] * y[l]) / rho2;
        g[2 * k][2 * l] = re;
        g[2 * k + 1][2 * l + 1] = re;
        g[2 * k][2 * l + 1] = im;
        g[2 * k + 1][2 * l] = -im;
      }
  }
};

// Installs g/dg/d2g callbacks on a 4-dimensional chart from one templated
// metric: doubles for the value, one jet sweep each for the derivatives.
template <typename M>
void install_analytic4(MetricChart& chart, M metric) {
  chart.g = [metric](const VectorN& p) {
    const std::array<double, 4> x{p[0], p[1], p[2], p[3]};
    double gm[4][4];
    metric.fill(x, gm);
    MatrixN out(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out(i, j) = gm[i][j];
    return out;
  };
  chart.dg = [metric](const VectorN& p, Tensor3& out) {
    std::array<Jet, 4> x;
    for (int a = 0; a < 4; ++a) x[a] = Jet::var(p[a], a);
    Jet gm[4][4];
    metric.fill(x, gm);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(a, i, j) = gm[i][j].d[a];
  };
  chart.d2g = [metric](const VectorN& p, Tensor4& out) {
    std::array<Jet, 4> x;
    for (int a = 0; a < 4; ++a) x[a] = Jet::var(p[a], a);
    Jet gm[4][4];
    metric.fill(x, gm);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) out(a, b, i, j) = gm[i][j].hess(a, b);
  };
}

// Spline bundle backing an imported-profile chart; shared by the metric and
// potential callbacks.
struct ProfileCtx {
  std::vector<CubicSpline> c;
  CubicSpline f;
};

// --- Metadata comments -------------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// "# key = value" or "# key: value" -> value text; empty when the line does
// not carry `key`.
std::string meta_value(const std::string& comment, const std::string& key) {
  std::string body = trim(comment);
  if (!body.empty() && body[0] == '#') body = trim(body.substr(1));
  if (body.compare(0, key.size(), key) != 0) return "";
  std::string rest = trim(body.substr(key.size()));
  if (rest.empty() || (rest[0] != '=' && rest[0] != ':')) return "";
  return trim(rest.substr(1));
}

double parse_meta_number(const std::string& text, const std::string& key) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("profile: cannot parse metadata '" + key + " = " + text + "'");
  }
}

std::string base_name(const std::string& path) {
  const auto cut = path.find_last_of("/\\");
  return cut == std::string::npos ? path : path.substr(cut + 1);
}

// --- Per-kind builders -------------------------------------------------------

void add(std::vector<ExpectedValue>& table, const std::string& name, double value,
         const std::string& note) {
  table.push_back({name, value, note});
}

Fixture build_sphere4(const FixtureSpec& spec) {
  Fixture fx;
  fx.kind = FixtureKind::Sphere4;
  fx.label = "sphere4(r=" + format_g12(spec.r) + ")";
  fx.chart.dim = 4;
  fx.chart.domain = Box::cube(4, -1e9, 1e9);
  fx.chart.label = fx.label;
  fx.chart.fd_step = 1e-3;  // chart coordinates are O(1) near the sample region
  install_analytic4(fx.chart, SphereMetric{spec.r});
  fx.quad.nodes_per_axis = 32;
  fx.quad.compactification = Compactification::Tan;
  fx.sample_box = Box::cube(4, -1.5, 1.5);
  fx.qe = trivial_potential(spec.m, 3.0 / (spec.r * spec.r));

  const double r2 = spec.r * spec.r;
  add(fx.expected, "chi", 2.0, "Euler characteristic of S^4");
  add(fx.expected, "tau", 0.0, "signature of S^4");
  add(fx.expected, "vol", (8.0 * kPi * kPi / 3.0) * r2 * r2, "Vol(S^4(r)) = (8 pi^2/3) r^4");
  add(fx.expected, "scal", 12.0 / r2, "constant scalar curvature 12/r^2");
  add(fx.expected, "lambda", 3.0 / r2, "Einstein constant: Ric = (3/r^2) g");
  add(fx.expected, "ricci_min", 3.0 / r2, "Einstein: every Ricci eigenvalue equals 3/r^2");
  add(fx.expected, "ricci_max", 3.0 / r2, "Einstein: every Ricci eigenvalue equals 3/r^2");
  add(fx.expected, "diameter", kPi * spec.r, "antipodal geodesic distance pi r");
  add(fx.expected, "w2", 0.0, "conformally flat: the Weyl tensor vanishes");
  add(fx.expected, "w2_plus", 0.0, "conformally flat: the Weyl tensor vanishes");
  add(fx.expected, "w2_minus", 0.0, "conformally flat: the Weyl tensor vanishes");
  return fx;
}

Fixture build_torus4(const FixtureSpec& spec) {
  Fixture fx;
  fx.kind = FixtureKind::Torus4;
  fx.label = "torus4(side=" + format_g12(spec.side) + ")";
  fx.chart.dim = 4;
  fx.chart.domain = Box::cube(4, 0.0, spec.side);
  fx.chart.label = fx.label;
  fx.chart.g = [](const VectorN&) { return MatrixN(MatrixN::Identity(4, 4)); };
  fx.chart.dg = [](const VectorN&, Tensor3&) {};   // identically zero
  fx.chart.d2g = [](const VectorN&, Tensor4&) {};  // identically zero
  fx.quad.nodes_per_axis = 16;
  fx.sample_box = Box::cube(4, 0.05 * spec.side, 0.95 * spec.side);
  fx.qe = trivial_potential(spec.m, 0.0);
  fx.qe_note =
      "flat box: lambda = 0, so this is not a compact quasi-Einstein example "
      "(compactness forces lambda > 0); kept as the detector's negative control";

  const double s = spec.side;
  add(fx.expected, "chi", 0.0, "Euler characteristic of T^4");
  add(fx.expected, "tau", 0.0, "signature of T^4");
  add(fx.expected, "vol", s * s * s * s, "flat box volume side^4");
  add(fx.expected, "scal", 0.0, "flat metric");
  add(fx.expected, "ricci_min", 0.0, "flat metric");
  add(fx.expected, "ricci_max", 0.0, "flat metric");
  add(fx.expected, "w2", 0.0, "flat metric");
  return fx;
}

Fixture build_s2xs2(const FixtureSpec& spec) {
  Fixture fx;
  fx.kind = FixtureKind::S2xS2;
  fx.label = "s2xs2(r1=" + format_g12(spec.r1) + ",r2=" + format_g12(spec.r2) + ")";
  fx.chart.dim = 4;
  fx.chart.domain = Box::cube(4, -1e9, 1e9);
  fx.chart.label = fx.label;
  fx.chart.fd_step = 1e-3;
  install_analytic4(fx.chart, S2xS2Metric{spec.r1, spec.r2});
  fx.quad.nodes_per_axis = 24;
  fx.quad.compactification = Compactification::Tan;
  fx.sample_box = Box::cube(4, -1.5, 1.5);

  const double k1 = 1.0 / (spec.r1 * spec.r1);  // factor Gauss curvatures
  const double k2 = 1.0 / (spec.r2 * spec.r2);
  const bool einstein = std::abs(spec.r1 - spec.r2) <= 1e-12 * std::max(spec.r1, spec.r2);
  if (einstein) {
    fx.qe = trivial_potential(spec.m, k1);
  }

  add(fx.expected, "chi", 4.0, "chi(S^2 x S^2) = chi(S^2)^2 = 4");
  add(fx.expected, "tau", 0.0, "signature of S^2 x S^2");
  add(fx.expected, "vol", 16.0 * kPi * kPi * spec.r1 * spec.r1 * spec.r2 * spec.r2,
      "(4 pi r1^2)(4 pi r2^2)");
  add(fx.expected, "scal", 2.0 * (k1 + k2), "R = 2/r1^2 + 2/r2^2");
  add(fx.expected, "ricci_min", std::min(k1, k2),
      "factor Ricci eigenvalues 1/r_i^2, multiplicity two each");
  add(fx.expected, "ricci_max", std::max(k1, k2),
      "factor Ricci eigenvalues 1/r_i^2, multiplicity two each");
  if (einstein) {
    add(fx.expected, "lambda", k1, "Einstein constant 1/r^2 when r1 = r2");
  }
  add(fx.expected, "diameter", std::hypot(kPi * spec.r1, kPi * spec.r2),
      "product diameter sqrt((pi r1)^2 + (pi r2)^2)");
  const double w2 = (k1 + k2) * (k1 + k2) / 3.0;
  add(fx.expected, "w2", w2,
      "|W|^2 = (k1 + k2)^2 / 3 for a product of surfaces with Gauss curvatures k_i");
  add(fx.expected, "w2_plus", 0.5 * w2, "self-dual and anti-self-dual halves are equal");
  add(fx.expected, "w2_minus", 0.5 * w2, "self-dual and anti-self-dual halves are equal");
  return fx;
}

Fixture build_cp2(const FixtureSpec& spec) {
  Fixture fx;
  fx.kind = FixtureKind::Cp2FubiniStudy;
  fx.label = "cp2-fubini-study";
  fx.chart.dim = 4;
  fx.chart.domain = Box::cube(4, -1e9, 1e9);
  fx.chart.label = fx.label;
  fx.chart.fd_step = 1e-3;
  fx.chart.orientation = +1.0;  // complex orientation of (x1, y1, x2, y2)
  install_analytic4(fx.chart, Cp2Metric{});
  fx.quad.nodes_per_axis = 32;
  fx.quad.compactification = Compactification::Tan;
  fx.sample_box = Box::cube(4, -1.5, 1.5);
  fx.qe = trivial_potential(spec.m, 6.0);

  add(fx.expected, "chi", 3.0, "Euler characteristic of CP^2");
  add(fx.expected, "tau", 1.0, "signature of CP^2 in the complex orientation");
  add(fx.expected, "vol", kPi * kPi / 2.0, "Fubini-Study volume pi^2/2 at Ric = 6 g");
  add(fx.expected, "scal", 24.0, "R = 4 lambda = 24");
  add(fx.expected, "lambda", 6.0, "Einstein constant: Ric = 6 g");
  add(fx.expected, "ricci_min", 6.0, "Einstein: every Ricci eigenvalue equals 6");
  add(fx.expected, "ricci_max", 6.0, "Einstein: every Ricci eigenvalue equals 6");
  add(fx.expected, "w2", 24.0, "self-dual eigenvalues (-2, -2, 4): |W|^2 = |W+|^2 = 24");
  add(fx.expected, "w2_plus", 24.0, "self-dual eigenvalues (-2, -2, 4)");
  add(fx.expected, "w2_minus", 0.0,
      "anti-self-dual Weyl part vanishes (Kahler-Einstein, complex orientation)");
  return fx;
}

Fixture build_perturbed_sphere4(const FixtureSpec& spec) {
  Fixture fx;
  fx.kind = FixtureKind::PerturbedSphere4;
  fx.label =
      "perturbed-sphere4(r=" + format_g12(spec.r) + ",eps=" + format_g12(spec.eps) + ")";
  fx.chart.dim = 4;
  fx.chart.domain = Box::cube(4, -1e9, 1e9);
  fx.chart.label = fx.label;
  fx.chart.fd_step = 1e-3;
  install_analytic4(fx.chart, PerturbedSphereMetric{spec.r, spec.eps});
  fx.quad.nodes_per_axis = 32;
  fx.quad.compactification = Compactification::Tan;
  fx.sample_box = Box::cube(4, -1.5, 1.5);
  fx.qe = trivial_potential(spec.m, 3.0 / (spec.r * spec.r));
  fx.qe_note =
      "approximate structure: f == 0 with the unperturbed lambda; "
      "qe_residual scales linearly in eps";

  add(fx.expected, "chi", 2.0, "still topologically S^4 for eps > -1");
  add(fx.expected, "tau", 0.0, "still topologically S^4 for eps > -1");
  return fx;
}

Fixture build_imported(const FixtureSpec& spec) {
  Fixture fx;
  fx.kind = FixtureKind::ImportedProfile;
  fx.label = "imported-profile(" + base_name(spec.path) + ")";
  fx.profile = load_profile(spec.path);
  const ImportedProfile& prof = *fx.profile;
  if (prof.coefs.size() != 3)
    throw ValidationError("fixture: imported-profile needs exactly 3 metric coefficient "
                          "columns for a 4-dimensional chart, got " +
                          std::to_string(prof.coefs.size()));

  auto ctx = std::make_shared<ProfileCtx>();
  for (const auto& col : prof.coefs) ctx->c.emplace_back(prof.t, col);
  ctx->f = CubicSpline(prof.t, prof.f);

  const double t0 = prof.t.front();
  const double len = prof.length();

  fx.chart.dim = 4;
  {
    Eigen::VectorXd lo(4), hi(4);
    lo << t0, 0.0, 0.0, 0.0;
    hi << t0 + len, 2.0 * kPi, 2.0 * kPi, 2.0 * kPi;
    fx.chart.domain = Box(lo, hi);
  }
  fx.chart.label = fx.label;
  fx.chart.fd_step = 1e-3 * len;
  // Diagonal cohomogeneity-one ansatz g = dt^2 + sum_i c_i(t) dθ_i^2; the
  // splines supply exact chart derivatives of the interpolant.
  fx.chart.g = [ctx](const VectorN& p) {
    MatrixN g = MatrixN::Zero(4, 4);
    g(0, 0) = 1.0;
    for (int i = 1; i < 4; ++i) g(i, i) = ctx->c[i - 1].eval(p[0]);
    return g;
  };
  fx.chart.dg = [ctx](const VectorN& p, Tensor3& out) {
    out = Tensor3(4);
    for (int i = 1; i < 4; ++i) out(0, i, i) = ctx->c[i - 1].deriv(p[0]);
  };
  fx.chart.d2g = [ctx](const VectorN& p, Tensor4& out) {
    out = Tensor4(4);
    for (int i = 1; i < 4; ++i) out(0, 0, i, i) = ctx->c[i - 1].deriv2(p[0]);
  };

  fx.quad.nodes_per_axis = 16;
  {
    Eigen::VectorXd lo(4), hi(4);
    lo << t0 + 0.02 * len, 0.3, 0.3, 0.3;
    hi << t0 + 0.98 * len, 6.0, 6.0, 6.0;
    fx.sample_box = Box(lo, hi);
  }

  QEData qe;
  qe.m = prof.m;
  qe.lambda = prof.lambda;
  qe.n = 4;
  qe.f = [ctx](const VectorN& p) { return ctx->f.eval(p[0]); };
  qe.df = [ctx](const VectorN& p) {
    VectorN d = VectorN::Zero(4);
    d[0] = ctx->f.deriv(p[0]);
    return d;
  };
  qe.d2f = [ctx](const VectorN& p) {
    MatrixN h = MatrixN::Zero(4, 4);
    h(0, 0) = ctx->f.deriv2(p[0]);
    return h;
  };
  fx.qe = std::move(qe);
  fx.qe_note = prof.provenance.empty()
                   ? "potential and (m, lambda) taken from the profile metadata"
                   : "potential and (m, lambda) taken from the profile metadata; provenance: " +
                         prof.provenance;
  return fx;
}

}  // namespace

QEData trivial_potential(double m, double lambda) {
  QEData qe;
  qe.m = m;
  qe.lambda = lambda;
  qe.n = 4;
  qe.f = [](const VectorN&) { return 0.0; };
  qe.df = [](const VectorN& p) { return VectorN(VectorN::Zero(p.size())); };
  qe.d2f = [](const VectorN& p) { return MatrixN(MatrixN::Zero(p.size(), p.size())); };
  return qe;
}

FixtureKind parse_fixture_kind(const std::string& name) {
  if (name == "sphere4") return FixtureKind::Sphere4;
  if (name == "torus4") return FixtureKind::Torus4;
  if (name == "s2xs2") return FixtureKind::S2xS2;
  if (name == "cp2-fubini-study") return FixtureKind::Cp2FubiniStudy;
  if (name == "perturbed-sphere4") return FixtureKind::PerturbedSphere4;
  if (name == "imported-profile") return FixtureKind::ImportedProfile;
  throw ValidationError(
      "fixture: unknown kind '" + name +
      "' (expected sphere4, torus4, s2xs2, cp2-fubini-study, perturbed-sphere4, "
      "imported-profile)");
}

std::string to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Sphere4: return "sphere4";
    case FixtureKind::Torus4: return "torus4";
    case FixtureKind::S2xS2: return "s2xs2";
    case FixtureKind::Cp2FubiniStudy: return "cp2-fubini-study";
    case FixtureKind::PerturbedSphere4: return "perturbed-sphere4";
    case FixtureKind::ImportedProfile: return "imported-profile";
  }
  return "unknown";
}

void FixtureSpec::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("fixture: ") + name + " must be positive and finite");
  };
  if (std::isnan(m) || !(m > 0.0))
    throw ValidationError("fixture: m must be positive (or inf)");
  switch (kind) {
    case FixtureKind::Sphere4:
      positive(r, "r");
      break;
    case FixtureKind::Torus4:
      positive(side, "side");
      break;
    case FixtureKind::S2xS2:
      positive(r1, "r1");
      positive(r2, "r2");
      break;
    case FixtureKind::Cp2FubiniStudy:
      break;
    case FixtureKind::PerturbedSphere4:
      positive(r, "r");
      if (!std::isfinite(eps) || !(eps > -1.0))
        throw ValidationError("fixture: eps must be finite and > -1");
      break;
    case FixtureKind::ImportedProfile:
      if (path.empty()) throw ValidationError("fixture: imported-profile requires a path");
      break;
  }
}

double ImportedProfile::f_min() const {
  return f.empty() ? 0.0 : *std::min_element(f.begin(), f.end());
}

double ImportedProfile::f_max() const {
  return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end());
}

void ImportedProfile::validate() const {
  const int n = rows();
  if (n < 2)
    throw ValidationError("profile: need at least 2 samples, got " + std::to_string(n));
  if (static_cast<int>(f.size()) != n)
    throw ValidationError("profile: column 'f' has " + std::to_string(f.size()) +
                          " samples, expected " + std::to_string(n));
  if (coef_names.size() != coefs.size())
    throw ValidationError("profile: coefficient name/column count mismatch");
  for (std::size_t c = 0; c < coefs.size(); ++c)
    if (static_cast<int>(coefs[c].size()) != n)
      throw ValidationError("profile: column '" + coef_names[c] + "' has " +
                            std::to_string(coefs[c].size()) + " samples, expected " +
                            std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(t[i]))
      throw ValidationError("profile: t not finite at data row " + std::to_string(i + 1));
  for (int i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1]))
      throw ValidationError("profile: t must be strictly increasing; data row " +
                            std::to_string(i + 1) + " has t = " + format_g12(t[i]) +
                            " after t = " + format_g12(t[i - 1]));
  for (std::size_t c = 0; c < coefs.size(); ++c)
    for (int i = 0; i < n; ++i) {
      const double v = coefs[c][i];
      const bool interior = i > 0 && i + 1 < n;
      const bool ok = interior ? (v > 0.0) : (v >= 0.0);  // poles may close up at the ends
      if (!std::isfinite(v) || !ok)
        throw ValidationError("profile: column '" + coef_names[c] +
                              "' must be positive on the open interval; data row " +
                              std::to_string(i + 1) + " has value " + format_g12(v));
    }
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(f[i]))
      throw ValidationError("profile: column 'f' not finite at data row " + std::to_string(i + 1));
  if (std::isnan(m) || !(m > 0.0))
    throw ValidationError("profile: metadata m must be positive (or inf)");
  if (!std::isfinite(lambda))
    throw ValidationError("profile: metadata lambda must be finite");
}

ImportedProfile load_profile(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 3 || table.header.front() != "t" || table.header.back() != "f") {
    std::string got;
    for (std::size_t c = 0; c < table.header.size(); ++c)
      got += (c ? "," : "") + table.header[c];
    throw ValidationError("profile: header must be 't,<coef1>,...,f', got '" + got + "'");
  }

  ImportedProfile prof;
  const std::size_t ncoef = table.header.size() - 2;
  prof.coef_names.assign(table.header.begin() + 1, table.header.end() - 1);
  prof.coefs.assign(ncoef, {});
  for (const auto& row : table.rows) {
    prof.t.push_back(row.front());
    for (std::size_t c = 0; c < ncoef; ++c) prof.coefs[c].push_back(row[1 + c]);
    prof.f.push_back(row.back());
  }

  bool have_m = false;
  bool have_lambda = false;
  for (const auto& comment : table.comments) {
    if (const std::string v = meta_value(comment, "m"); !v.empty()) {
      prof.m = parse_meta_number(v, "m");
      have_m = true;
    } else if (const std::string v2 = meta_value(comment, "lambda"); !v2.empty()) {
      prof.lambda = parse_meta_number(v2, "lambda");
      have_lambda = true;
    } else if (const std::string v3 = meta_value(comment, "provenance"); !v3.empty()) {
      prof.provenance = v3;
    }
  }
  if (!have_m)
    throw ValidationError("profile: missing metadata comment '# m = <value>' in '" + path + "'");
  if (!have_lambda)
    throw ValidationError("profile: missing metadata comment '# lambda = <value>' in '" + path +
                          "'");

  prof.validate();
  return prof;
}

ProfileOscCheck profile_osc_check(const ImportedProfile& profile) {
  ProfileOscCheck out;
  out.f_osc = profile.f_osc();
  out.bound = osc_bound(profile.m);
  // <= with a hair of slack so exact-boundary synthetic data passes.
  out.pass = out.f_osc <= out.bound * (1.0 + 1e-12) + 1e-12;
  return out;
}

const ExpectedValue* Fixture::find_expected(const std::string& name) const {
  for (const auto& e : expected)
    if (e.name == name) return &e;
  return nullptr;
}

double Fixture::expect(const std::string& name) const {
  const ExpectedValue* e = find_expected(name);
  if (!e)
    throw ValidationError("fixture '" + label + "': no expected value named '" + name + "'");
  return e->value;
}

Fixture build_fixture(const FixtureSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case FixtureKind::Sphere4: return build_sphere4(spec);
    case FixtureKind::Torus4: return build_torus4(spec);
    case FixtureKind::S2xS2: return build_s2xs2(spec);
    case FixtureKind::Cp2FubiniStudy: return build_cp2(spec);
    case FixtureKind::PerturbedSphere4: return build_perturbed_sphere4(spec);
    case FixtureKind::ImportedProfile: return build_imported(spec);
  }
  throw ValidationError("fixture: unhandled kind");
}

}  // namespace qem
