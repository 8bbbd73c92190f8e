// Serial reference vs OpenMP for the three hot kernels.
#include <benchmark/benchmark.h>

#include <cmath>

#include "lsv/density.hpp"
#include "lsv/orbit.hpp"

using namespace lsv;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_BranchCache(benchmark::State& st) {
  const InducedSystem sys(MapParams::lsv(0.8), 2000);
  const UniformGrid g(0.5, 1.0, 257);
  for (auto _ : st) {
    BranchCache c(sys, g, mode(st));
    benchmark::DoNotOptimize(c.g(0, 1));
  }
  label(st);
}

void BM_RuelleApply(benchmark::State& st) {
  static const DensityPipeline pipe(0.8, 1025, 4000);
  std::vector<double> u(pipe.op.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = 1.0 + 0.1 * std::sin(0.01 * static_cast<double>(i));
  for (auto _ : st) benchmark::DoNotOptimize(pipe.op.apply(u, mode(st)));
  label(st);
}

void BM_OrbitEnsemble(benchmark::State& st) {
  OrbitEnsembleConfig cfg;
  cfg.alpha = 0.8;
  cfg.n_steps = 200000;
  cfg.n_orbits = 16;
  const auto phi = Potential::identity();
  for (auto _ : st) benchmark::DoNotOptimize(run_ensemble(cfg, phi, 0.05, 0, {}, mode(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_BranchCache)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RuelleApply)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
