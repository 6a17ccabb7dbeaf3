#include <vector>

#include <benchmark/benchmark.h>

#include "svmix/mixture.hpp"
#include "svmix/model.hpp"
#include "svmix/particle_filter.hpp"
#include "svmix/rng.hpp"
#include "svmix/samplers.hpp"
#include "svmix/state_space.hpp"

using namespace svmix;

namespace {

struct Fixture {
  SvmParams params;
  SimulatedSeries sim;
  TransformedData tdata;
  MixtureGrid grid;
  IndicatorPath s;
  SsmSpec spec;

  explicit Fixture(std::size_t n) {
    params.mu = 0.0;
    params.phi = 0.97;
    params.sigma2 = 0.09;
    params.beta = 0.5;
    Rng rng(1);
    sim = simulate(params, n, rng);
    tdata = transform(sim.y);
    grid = build_grid(params.beta);
    s = draw_indicators(sim.h, params, tdata, grid, rng);
    spec = build_ssm(params, s, tdata, grid);
  }
};

void BM_KalmanLoglik(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kalman_loglik(f.spec, f.tdata.ystar));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KalmanLoglik)->Arg(1000)->Arg(4000);

void BM_SimulationSmoother(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(simulation_smoother(f.spec, f.tdata.ystar, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulationSmoother)->Arg(1000);

void BM_DrawIndicators(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_indicators(f.sim.h, f.params, f.tdata, f.grid, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DrawIndicators)->Arg(1000);

void BM_BuildGrid(benchmark::State& state) {
  double beta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_grid(beta));
    beta += 1e-9;
  }
}
BENCHMARK(BM_BuildGrid);

void BM_ParticleFilter(benchmark::State& state) {
  const Fixture f(200);
  PfConfig cfg;
  cfg.n_particles = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(apf_loglik(f.sim.y, f.params, cfg, rng).loglik);
  state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}
BENCHMARK(BM_ParticleFilter)->Arg(10000)->Arg(80000)->Unit(benchmark::kMillisecond);

void BM_GmsIteration(benchmark::State& state) {
  const Fixture f(1000);
  McmcConfig cfg;
  cfg.n_burnin = 0;
  cfg.n_draws = 20;
  for (auto _ : state) {
    Rng rng(5);
    benchmark::DoNotOptimize(run_chain(f.sim.y, PriorSpec{}, cfg, rng));
  }
  state.SetItemsProcessed(state.iterations() * 20);
}
BENCHMARK(BM_GmsIteration)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
