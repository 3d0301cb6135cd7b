#include <benchmark/benchmark.h>

#include <chrono>
#include <random>

#include "synth/synthetic.hpp"
#include "windfeas/shear.hpp"
#include "windfeas/stability.hpp"
#include "windfeas/stats.hpp"
#include "windfeas/turbine.hpp"
#include "windfeas/wind_ingest.hpp"

using namespace windfeas;
using namespace std::chrono;

namespace {

const ingest::WindSeries& month_series() {
  static const ingest::WindSeries s = [] {
    synth::SyntheticOptions o;
    o.days = 31;
    o.weibull_scale = 9.0;
    o.long_gaps = false;
    return ingest::impute_short_gaps(synth::synthetic_series(o));
  }();
  return s;
}

void BM_ImputeShortGaps(benchmark::State& state) {
  synth::SyntheticOptions o;
  o.days = 31;
  o.isolated_missing = 0.01;
  const auto raw = synth::synthetic_series(o);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ingest::impute_short_gaps(raw));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(raw.size()));
}
BENCHMARK(BM_ImputeShortGaps)->Unit(benchmark::kMillisecond);

void BM_ResampleAverage(benchmark::State& state) {
  const auto& s = month_series();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ingest::resample_average(s, minutes(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(s.size()));
}
BENCHMARK(BM_ResampleAverage)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_AnalyzeMonth(benchmark::State& state) {
  const auto turbines = synth::sample_turbines();
  const auto& spec = turbines.front();
  const auto avg = ingest::resample_average(month_series(), minutes(state.range(0)));
  const auto power = turbine::power_series(spec, shear::to_hub_height(avg, spec.hub_height_m));
  stability::WindowParams w;
  const auto profile = ev::reference_fast_charge_profile();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability::analyze(power.power, w, profile));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(power.power.size()));
}
BENCHMARK(BM_AnalyzeMonth)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FitWeibull(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::weibull_distribution<double> d(1.34, 4.8);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (auto& v : x) {
    v = d(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::fit_weibull(x));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitWeibull)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
