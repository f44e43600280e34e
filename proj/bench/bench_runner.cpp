// Serial reference vs OpenMP experiment runner, plus per-step costs.

#include <benchmark/benchmark.h>

#include "attitude/harness.hpp"

namespace {

att::ExperimentConfig bench_config(att::PresetSet set, int seeds) {
  auto cfg = att::paper_preset(set);
  cfg.seeds.clear();
  for (int s = 1; s <= seeds; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  return cfg;
}

void run(benchmark::State& state, att::PresetSet set, att::Execution exec) {
  const auto cfg = bench_config(set, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto runs = att::run_experiment(cfg, exec);
    benchmark::DoNotOptimize(runs.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.algorithms.size() * cfg.seeds.size()));
}

void BM_GaussianSerial(benchmark::State& s) { run(s, att::PresetSet::Gaussian, att::Execution::Serial); }
void BM_GaussianParallel(benchmark::State& s) { run(s, att::PresetSet::Gaussian, att::Execution::Parallel); }
void BM_NonlinearSerial(benchmark::State& s) { run(s, att::PresetSet::Nonlinear, att::Execution::Serial); }
void BM_NonlinearParallel(benchmark::State& s) { run(s, att::PresetSet::Nonlinear, att::Execution::Parallel); }

BENCHMARK(BM_GaussianSerial)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GaussianParallel)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NonlinearSerial)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NonlinearParallel)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();

struct StepFixture {
  std::vector<att::TruthSample> truth;
  std::vector<att::MeasurementFrame> frames;
  StepFixture() {
    auto cfg = att::paper_preset(att::PresetSet::Nonlinear);
    truth = att::generate_truth(cfg.trajectory);
    frames = att::synthesize_measurements(truth, cfg.sensors, 1);
  }
};

const StepFixture& fixture() {
  static const StepFixture f;
  return f;
}

void BM_MekfStep(benchmark::State& state) {
  const auto& f = fixture();
  att::GaussianNoiseConfig cfg;
  att::MekfState s;
  std::size_t k = 0;
  for (auto _ : state) {
    s = att::mekf_step(s, f.frames[k], cfg, 0.01);
    k = (k + 1) % f.frames.size();
  }
  benchmark::DoNotOptimize(s.q_hat);
}
BENCHMARK(BM_MekfStep);

void BM_GpNsafDirectStep(benchmark::State& state) {
  const auto& f = fixture();
  att::PpfParams p;
  att::NsafState s;
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& fr = f.frames[k];
    const att::FilterInput in{fr.omega_m, f.truth[k].r, &fr};
    s = att::gp_nsaf_step(s, in, 0.0, 0.01, p, att::FilterMode::Direct);
    k = (k + 1) % f.frames.size();
  }
  benchmark::DoNotOptimize(s.r_hat);
}
BENCHMARK(BM_GpNsafDirectStep);

}  // namespace

BENCHMARK_MAIN();
