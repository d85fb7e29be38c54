// Microbenchmarks for the hot paths: pointwise curvature bundles (analytic
// and finite-difference metric derivatives), quadrature sweeps, the
// comparison-ODE integrator, and the threshold bisection.
#include <benchmark/benchmark.h>

#include <cmath>

#include "qem/bounds.hpp"
#include "qem/curvature.hpp"
#include "qem/fixtures.hpp"
#include "qem/ode.hpp"
#include "qem/quadrature.hpp"

using namespace qem;

namespace {

Fixture make(FixtureKind kind) {
  FixtureSpec spec;
  spec.kind = kind;
  return build_fixture(spec);
}

VectorN sample_point() {
  VectorN p(4);
  p << 0.31, -0.12, 0.47, 0.08;
  return p;
}

void BM_CurvatureSphere(benchmark::State& state) {
  const Fixture fx = make(FixtureKind::Sphere4);
  const VectorN p = sample_point();
  for (auto _ : state) benchmark::DoNotOptimize(curvature(fx.chart, p));
}
BENCHMARK(BM_CurvatureSphere);

void BM_CurvatureCp2(benchmark::State& state) {
  const Fixture fx = make(FixtureKind::Cp2FubiniStudy);
  const VectorN p = sample_point();
  for (auto _ : state) benchmark::DoNotOptimize(curvature(fx.chart, p));
}
BENCHMARK(BM_CurvatureCp2);

// Same metric with the analytic derivative callbacks removed: measures the
// Richardson finite-difference fallback.
void BM_CurvatureSphereFD(benchmark::State& state) {
  Fixture fx = make(FixtureKind::Sphere4);
  fx.chart.dg = nullptr;
  fx.chart.d2g = nullptr;
  const VectorN p = sample_point();
  for (auto _ : state) benchmark::DoNotOptimize(curvature(fx.chart, p));
}
BENCHMARK(BM_CurvatureSphereFD);

void BM_IntegralTable(benchmark::State& state) {
  const Fixture fx = make(FixtureKind::Sphere4);
  QuadratureSpec spec = fx.quad;
  spec.nodes_per_axis = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_integrals(fx.chart, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(std::pow(spec.nodes_per_axis, 4)));
}
BENCHMARK(BM_IntegralTable)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_IntegrateU(benchmark::State& state) {
  GeodesicProfile profile;
  const int samples = 201;
  profile.L = 1.0;
  profile.s.resize(samples);
  profile.ric.resize(samples);
  for (int i = 0; i < samples; ++i) {
    profile.s[i] = static_cast<double>(i) / (samples - 1);
    profile.ric[i] = 1.0 + 0.2 * std::sin(3.0 * profile.s[i]);
  }
  for (auto _ : state) benchmark::DoNotOptimize(integrate_u(profile, 2.0, 2.0, 1.0));
}
BENCHMARK(BM_IntegrateU);

void BM_HtThresholds(benchmark::State& state) {
  BoundsInput in;
  in.m = 2.0;
  in.lambda = 1.0;
  in.c = 0.0;
  in.C = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(ht_thresholds(in));
}
BENCHMARK(BM_HtThresholds);

}  // namespace

BENCHMARK_MAIN();
