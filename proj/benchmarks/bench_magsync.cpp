#include <benchmark/benchmark.h>

#include "magsync/dynamics.hpp"
#include "magsync/experiments.hpp"
#include "magsync/measures.hpp"
#include "magsync/quadrature.hpp"

using namespace magsync;

namespace {

MeanFieldState sample_state() {
  MeanFieldState s;
  s.alpha = {cplx{3.1, -1.2}, cplx{2.9, -1.5}};
  s.beta = {0.4, 0.7};
  s.t = 5.0e4;
  return s;
}

void BM_Linearize(benchmark::State& state) {
  const SystemParams p = preset_config(Scenario::phase_locked).params;
  const MeanFieldState s = sample_state();
  for (auto _ : state) benchmark::DoNotOptimize(linearize(p, s));
}
BENCHMARK(BM_Linearize);

// One evaluation of the Lyapunov right-hand side M C + C M^T + D.
void BM_CovarianceRhs(benchmark::State& state) {
  const SystemParams p = preset_config(Scenario::phase_locked).params;
  const Mat6 m = drift_matrix(linearization_coefficients(p, sample_state())).m;
  const Mat6 d = diffusion_matrix(p).as_matrix();
  const Mat6 c = 0.5 * Mat6::Identity() + 0.01 * Mat6::Ones();
  for (auto _ : state) {
    const Mat6 mc = m * c;
    Mat6 dc = mc + mc.transpose() + d;
    benchmark::DoNotOptimize(dc);
  }
}
BENCHMARK(BM_CovarianceRhs);

void BM_QuantumSyncPhi(benchmark::State& state) {
  const Mat6 c = 0.5 * Mat6::Identity() + 0.01 * Mat6::Ones();
  double phi = 0.132;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_sync_phi(c, phi));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_QuantumSyncPhi);

// Whole-pipeline throughput: args are simulated time units.
void BM_Propagate(benchmark::State& state) {
  ScenarioConfig c = preset_config(Scenario::phase_locked);
  c.t_final = static_cast<double>(state.range(0));
  const auto steps = static_cast<std::int64_t>(c.t_final / c.dt);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(c));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Propagate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
