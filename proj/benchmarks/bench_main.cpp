#include <benchmark/benchmark.h>

#include "flatline/flow.hpp"
#include "flatline/hodge.hpp"
#include "flatline/lyapunov.hpp"
#include "flatline/mesh.hpp"
#include "flatline/twisted.hpp"
#include "flatline/veech.hpp"

using namespace flatline;

static void BM_TraceOctagon(benchmark::State& state) {
  const auto s = regular_octagon_surface();
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trace_orbit(s, 0.4321, {0, {0.05, 0.3}}, T));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceOctagon)->Arg(1 << 10)->Arg(1 << 14);

static void BM_TwistedSeries(benchmark::State& state) {
  const auto s = regular_octagon_surface();
  const auto f = Observable::parse("cos(2pi x) + sin(2pi y)").centered(s);
  const auto times = dyadic_times(0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twisted_integral_series(s, 0.4321, f, 0.37, {0, {0.05, 0.3}}, times));
}
BENCHMARK(BM_TwistedSeries)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ZorichLyapunov(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(lyapunov_spectrum(Permutation::reversal(4), 4, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ZorichLyapunov)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_MeshBuild(benchmark::State& state) {
  const auto s = regular_octagon_surface();
  for (auto _ : state) benchmark::DoNotOptimize(FlatMesh::build(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MeshBuild)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_HarmonicSolve(benchmark::State& state) {
  const auto m = FlatMesh::build(regular_octagon_surface(), static_cast<int>(state.range(0)));
  const HodgeSolver solver(m);
  const Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(4, 1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(solver.hodge_norm(c));
}
BENCHMARK(BM_HarmonicSolve)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_HodgeFactorize(benchmark::State& state) {
  const auto m = FlatMesh::build(regular_octagon_surface(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(HodgeSolver(m));
}
BENCHMARK(BM_HodgeFactorize)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_TwistedRank(benchmark::State& state) {
  const auto m = FlatMesh::build(regular_octagon_surface(), 1);
  const Eigen::VectorXd eta = 0.5 * m.re_h();
  for (auto _ : state) benchmark::DoNotOptimize(twisted_rank(m, eta));
}
BENCHMARK(BM_TwistedRank)->Unit(benchmark::kMillisecond);

static void BM_VeechOrbit(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(veech_orbit_random(Permutation::reversal(4), Frequency::parse("0.37"), state.range(0), 1));
}
BENCHMARK(BM_VeechOrbit)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
