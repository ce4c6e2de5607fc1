#include <benchmark/benchmark.h>

#include "calabi/invariants.hpp"
#include "calabi/verify.hpp"

using namespace calabi;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(parallel_threads()));
}

void BM_CurvatureReport(benchmark::State& state) {
  const PolytopeData p = cyclic_resolution(6);
  const TaubNutParameter nu = validate_parameter(p, {1, -0.9});
  for (auto _ : state) benchmark::DoNotOptimize(compute_invariants(p, nu, 1e-12, mode(state)));
  label(state);
}

void BM_IdentitySuite(benchmark::State& state) {
  const PolytopeData p = cyclic_resolution(5);
  const TaubNutParameter nu = validate_parameter(p, {1, -1.2});
  const auto pts = halton_points(p, 1000);
  const auto hs = boundary_samples(p, 100);
  for (auto _ : state) benchmark::DoNotOptimize(check_identities(p, nu, pts, hs, mode(state)));
  label(state);
}

void BM_ArcDecay(benchmark::State& state) {
  const PolytopeData p = cyclic_resolution(4);
  const TaubNutParameter nu = validate_parameter(p, {1, -0.9});
  for (auto _ : state)
    benchmark::DoNotOptimize(
        decay_profile(p, nu, DecayQuantity::T_arc_integrand_sup, {25, 50, 100, 200, 400, 800}, mode(state)));
  label(state);
}

void BM_PipelineCrossCheck(benchmark::State& state) {
  const PolytopeData p = build_polytope({{0, 1}, {1, 0}, {3, -1}}, {1, 2});
  const TaubNutParameter nu = validate_parameter(p, {1, -0.5});
  for (auto _ : state)
    benchmark::DoNotOptimize(pipeline_cross_check(p, nu, 1e-10, {25, 50, 100, 200, 400}, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_CurvatureReport)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_IdentitySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArcDecay)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineCrossCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
