// Curvature engine: Christoffel symbols, Riemann/Ricci/Weyl tensors, the
// self-dual split, finite-difference fallbacks, Ricci extremes, geodesics.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <vector>

#include "qem/csv.hpp"
#include "qem/curvature.hpp"
#include "qem/errors.hpp"
#include "qem/fixtures.hpp"
#include "qem/metric_chart.hpp"
#include "qem/profile.hpp"

using namespace qem;

namespace {

constexpr double kPi = std::numbers::pi;

Fixture make(FixtureKind kind) {
  FixtureSpec spec;
  spec.kind = kind;
  return build_fixture(spec);
}

VectorN point4(double a, double b, double c, double d) {
  VectorN p(4);
  p << a, b, c, d;
  return p;
}

std::vector<VectorN> random_points(const Box& box, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<VectorN> pts;
  for (int i = 0; i < count; ++i) {
    VectorN p(box.dim());
    for (int a = 0; a < box.dim(); ++a)
      p[a] = box.lo[a] + uni(rng) * (box.hi[a] - box.lo[a]);
    pts.push_back(p);
  }
  return pts;
}

double max_symmetry_violation(const CurvatureBundle& b) {
  const int n = b.g.rows();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r = b.riemann(i, j, k, l);
          worst = std::max(worst, std::abs(r + b.riemann(j, i, k, l)));
          worst = std::max(worst, std::abs(r + b.riemann(i, j, l, k)));
          worst = std::max(worst, std::abs(r - b.riemann(k, l, i, j)));
          // First Bianchi identity.
          worst = std::max(
              worst, std::abs(r + b.riemann(i, k, l, j) + b.riemann(i, l, j, k)));
        }
  return worst;
}

double max_weyl_trace(const CurvatureBundle& b) {
  const int n = b.g.rows();
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double tr = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) tr += b.g_inv(i, k) * b.weyl(i, j, k, l);
      worst = std::max(worst, std::abs(tr));
    }
  return worst;
}

}  // namespace

TEST_CASE("round sphere is a space form of curvature 1/r^2") {
  FixtureSpec spec;
  spec.kind = FixtureKind::Sphere4;
  spec.r = 2.0;
  const Fixture fx = build_fixture(spec);
  const double kappa = 1.0 / (spec.r * spec.r);

  for (const VectorN& p : random_points(fx.sample_box, 5, 11)) {
    const CurvatureBundle b = curvature(fx.chart, p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            const double expect =
                kappa * (b.g(i, k) * b.g(j, l) - b.g(i, l) * b.g(j, k));
            CHECK(b.riemann(i, j, k, l) ==
                  doctest::Approx(expect).epsilon(1e-9).scale(1.0));
          }
    CHECK((b.ricci - 3.0 * kappa * b.g).norm() < 1e-9);
    CHECK(b.scalar == doctest::Approx(12.0 * kappa).epsilon(1e-10));
    CHECK(b.w2 < 1e-14);
    CHECK(b.tr2 < 1e-16);

    const double rho2 = p.squaredNorm();
    const double dens = 16.0 * spec.r * spec.r * spec.r * spec.r /
                        std::pow(1.0 + rho2, 4);
    CHECK(b.vol_density == doctest::Approx(dens).epsilon(1e-12));
  }
}

TEST_CASE("flat box has identically vanishing curvature") {
  const Fixture fx = make(FixtureKind::Torus4);
  const CurvatureBundle b = curvature(fx.chart, point4(1.0, 2.0, 3.0, 4.0));
  CHECK(b.scalar == 0.0);
  CHECK(b.ricci.norm() == 0.0);
  CHECK(b.w2 == 0.0);
  CHECK(b.vol_density == 1.0);
  const Tensor3 gamma = christoffel(fx.chart, point4(2.0, 2.0, 2.0, 2.0));
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(gamma(k, i, j) == 0.0);
}

TEST_CASE("sphere christoffel symbols match the conformally flat formula") {
  const Fixture fx = make(FixtureKind::Sphere4);
  const VectorN p = point4(0.5, 0.0, 0.0, 0.0);
  // g = e^{2 phi} delta with phi = ln(2r/(1+|x|^2)): Gamma^k_ij =
  // delta_ik phi_j + delta_jk phi_i - delta_ij phi_k, phi_a = -2 x_a/(1+|x|^2).
  const double phi0 = -2.0 * 0.5 / 1.25;
  const Tensor3 gamma = christoffel(fx.chart, p);
  CHECK(gamma(0, 0, 0) == doctest::Approx(phi0).epsilon(1e-10));
  CHECK(gamma(1, 0, 1) == doctest::Approx(phi0).epsilon(1e-10));
  CHECK(gamma(0, 1, 1) == doctest::Approx(-phi0).epsilon(1e-10));
  CHECK(gamma(2, 0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("riemann symmetries, bianchi, weyl trace and split norms hold everywhere") {
  for (FixtureKind kind :
       {FixtureKind::Sphere4, FixtureKind::S2xS2, FixtureKind::Cp2FubiniStudy}) {
    const Fixture fx = make(kind);
    for (const VectorN& p : random_points(fx.sample_box, 8, 23)) {
      const CurvatureBundle b = curvature(fx.chart, p);
      CHECK(max_symmetry_violation(b) < 1e-8);
      CHECK(max_weyl_trace(b) < 1e-8);
      REQUIRE(b.has_weyl_split);
      CHECK(std::abs(b.wplus_eigs.sum()) < 1e-9);
      CHECK(std::abs(b.wminus_eigs.sum()) < 1e-9);
      CHECK(b.w2 == doctest::Approx(b.w2_plus + b.w2_minus).epsilon(1e-12).scale(1.0));
      // Eigenvalues ascending.
      CHECK(b.wplus_eigs[0] <= b.wplus_eigs[1]);
      CHECK(b.wplus_eigs[1] <= b.wplus_eigs[2]);
    }
  }
}

TEST_CASE("product of two-spheres: ricci eigenvalues and weyl norm") {
  FixtureSpec spec;
  spec.kind = FixtureKind::S2xS2;
  spec.r1 = 1.0;
  spec.r2 = 2.0;
  const Fixture fx = build_fixture(spec);
  const double k1 = 1.0, k2 = 0.25;

  const CurvatureBundle b = curvature(fx.chart, point4(0.2, -0.3, 0.4, 0.1));
  const Eigen::VectorXd eigs =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Eigen::MatrixXd(b.ricci_endo))
          .eigenvalues();
  CHECK(eigs[0] == doctest::Approx(k2).epsilon(1e-9));
  CHECK(eigs[1] == doctest::Approx(k2).epsilon(1e-9));
  CHECK(eigs[2] == doctest::Approx(k1).epsilon(1e-9));
  CHECK(eigs[3] == doctest::Approx(k1).epsilon(1e-9));
  CHECK(b.scalar == doctest::Approx(2.0 * (k1 + k2)).epsilon(1e-9));
  // |W|^2 = (k1 + k2)^2 / 3, split evenly across the two halves.
  const double w2 = (k1 + k2) * (k1 + k2) / 3.0;
  CHECK(b.w2 == doctest::Approx(w2).epsilon(1e-8));
  CHECK(b.w2_plus == doctest::Approx(0.5 * w2).epsilon(1e-8));
  CHECK(b.w2_minus == doctest::Approx(0.5 * w2).epsilon(1e-8));
}

TEST_CASE("fubini-study chart is einstein with self-dual spectrum (-2, -2, 4)") {
  const Fixture fx = make(FixtureKind::Cp2FubiniStudy);
  for (const VectorN& p : random_points(fx.sample_box, 5, 31)) {
    const CurvatureBundle b = curvature(fx.chart, p);
    CHECK((b.ricci - 6.0 * b.g).norm() < 1e-8);
    CHECK(b.scalar == doctest::Approx(24.0).epsilon(1e-9));
    CHECK(b.wplus_eigs[0] == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(b.wplus_eigs[1] == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(b.wplus_eigs[2] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(b.w2_plus == doctest::Approx(24.0).epsilon(1e-8));
    CHECK(b.w2_minus < 1e-8);
  }
}

TEST_CASE("orientation flip swaps the two weyl halves bit-for-bit") {
  const Fixture fx = make(FixtureKind::Cp2FubiniStudy);
  MetricChart flipped = fx.chart;
  flipped.orientation = -fx.chart.orientation;
  const VectorN p = point4(0.4, -0.2, 0.3, 0.5);
  const CurvatureBundle base = curvature(fx.chart, p);
  const CurvatureBundle flip = curvature(flipped, p);
  CHECK(flip.w2_plus == base.w2_minus);
  CHECK(flip.w2_minus == base.w2_plus);
  for (int i = 0; i < 3; ++i) {
    CHECK(flip.wplus_eigs[i] == base.wminus_eigs[i]);
    CHECK(flip.wminus_eigs[i] == base.wplus_eigs[i]);
  }
}

TEST_CASE("plain finite differences of the metric converge at second order") {
  const Fixture fx = make(FixtureKind::Sphere4);
  const VectorN p = point4(0.3, 0.1, -0.2, 0.4);
  const MetricDerivs exact = eval_metric_derivs(fx.chart, p);

  auto fd_error = [&](double h) {
    Tensor3 fd(4);
    fd_dg_plain(fx.chart, p, h, fd);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          worst = std::max(worst, std::abs(fd(a, i, j) - exact.dg(a, i, j)));
    return worst;
  };
  const double e1 = fd_error(2e-3);
  const double e2 = fd_error(1e-3);
  REQUIRE(e2 > 0.0);
  const double ratio = e1 / e2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("richardson fallback reproduces analytic-derivative curvature") {
  const Fixture fx = make(FixtureKind::Sphere4);
  MetricChart fd = fx.chart;
  fd.dg = nullptr;
  fd.d2g = nullptr;
  const VectorN p = point4(-0.4, 0.2, 0.1, 0.3);
  const CurvatureBundle want = curvature(fx.chart, p);
  const CurvatureBundle got = curvature(fd, p);
  CHECK((got.ricci - want.ricci).norm() < 1e-6);
  CHECK(got.scalar == doctest::Approx(want.scalar).epsilon(1e-7));
  CHECK(std::abs(got.w2 - want.w2) < 1e-6);
}

TEST_CASE("points outside the chart domain are rejected") {
  const Fixture fx = make(FixtureKind::Torus4);
  VectorN p = point4(-1.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(check_point(fx.chart, p), ValidationError);
  CHECK_THROWS_AS(curvature(fx.chart, p), ValidationError);
  VectorN q(3);
  q << 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(check_point(fx.chart, q), ValidationError);
}

TEST_CASE("ricci extremes on S2(1) x S2(2) are (1/4, 1)") {
  FixtureSpec spec;
  spec.kind = FixtureKind::S2xS2;
  spec.r1 = 1.0;
  spec.r2 = 2.0;
  const Fixture fx = build_fixture(spec);
  GridSpec grid;
  grid.per_axis = 5;
  grid.box = fx.sample_box;
  const RicciExtremes ext = ricci_extremes(fx.chart, grid);
  CHECK(ext.c == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(ext.C == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("equatorial geodesic of the unit sphere closes after 2 pi") {
  const Fixture fx = make(FixtureKind::Sphere4);
  const VectorN p = point4(1.0, 0.0, 0.0, 0.0);
  const VectorN v = point4(0.0, 1.0, 0.0, 0.0);
  GeodesicOptions opts;
  opts.length = 2.0 * kPi;
  opts.samples = 129;
  // Sample the first chart coordinate along the curve: the equator is the
  // unit circle x = (cos s, sin s, 0, 0), so x_0(s) = cos s.
  const GeodesicProfile prof =
      geodesic(fx.chart, p, v, opts, [](const VectorN& x) { return x[0]; });

  REQUIRE_FALSE(prof.truncated);
  REQUIRE(prof.has_f());
  CHECK(prof.L == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    CHECK(prof.ric[i] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(prof.f[i] == doctest::Approx(std::cos(prof.s[i])).epsilon(1e-5).scale(1.0));
  }
  CHECK(std::abs(prof.f.back() - 1.0) < 1e-5);  // back at the start
}

TEST_CASE("geodesics leaving the box are truncated and flagged") {
  const Fixture fx = make(FixtureKind::Torus4);
  const double mid = kPi;
  const VectorN p = point4(mid, mid, mid, mid);
  const VectorN v = point4(1.0, 0.0, 0.0, 0.0);
  GeodesicOptions opts;
  opts.length = 6.0;  // exits after ~pi
  const GeodesicProfile prof = geodesic(fx.chart, p, v, opts);
  CHECK(prof.truncated);
  CHECK(prof.s.back() < 6.0);
  CHECK(prof.s.back() > 2.0);
  for (double r : prof.ric) CHECK(r == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("geodesic profiles round-trip through csv") {
  GeodesicProfile prof;
  for (int i = 0; i <= 10; ++i) {
    prof.s.push_back(0.1 * i);
    prof.ric.push_back(3.0 + 0.01 * i);
    prof.f.push_back(std::sin(0.1 * i));
  }
  prof.L = 1.0;
  const std::string path =
      (std::filesystem::temp_directory_path() / "qem_test_profile.csv").string();
  save_geodesic_profile(prof, path);
  const GeodesicProfile back = load_geodesic_profile(path);
  REQUIRE(back.s.size() == prof.s.size());
  REQUIRE(back.has_f());
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    CHECK(back.s[i] == doctest::Approx(prof.s[i]).epsilon(1e-12));
    CHECK(back.ric[i] == doctest::Approx(prof.ric[i]).epsilon(1e-12));
    CHECK(back.f[i] == doctest::Approx(prof.f[i]).epsilon(1e-12));
  }
  CHECK(back.L == doctest::Approx(1.0));
  std::filesystem::remove(path);
}

TEST_CASE("export_point_set writes one row per point") {
  const Fixture fx = make(FixtureKind::Sphere4);
  const std::vector<VectorN> pts = random_points(fx.sample_box, 4, 7);
  const std::string path =
      (std::filesystem::temp_directory_path() / "qem_test_points.csv").string();
  export_point_set(fx.chart, pts, path);
  const CsvTable table = read_csv(path);
  CHECK(table.rows.size() == 4);
  CHECK(table.header.size() == 9);  // 4 coordinates + 5 scalar fields
  std::filesystem::remove(path);
}
