#include <benchmark/benchmark.h>

#include "udw/hydrogen.hpp"
#include "udw/rates.hpp"
#include "udw/templates.hpp"
#include "udw/wavepackets.hpp"

namespace {

const udw::DetectorParams kParams = udw::make_detector_params(1.0, 1e3, 1.0, 1.0);
const udw::HydrogenParams kHp = udw::default_hydrogen_params();

void BM_TSpont(benchmark::State& state) {
  double p = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::t_spont(p, kParams));
    p = (p < 1e5) ? p * 1.01 : 0.1;
  }
}
BENCHMARK(BM_TSpont);

void BM_TSpontOracle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::t_spont_oracle(17.3, kParams));
  }
}
BENCHMARK(BM_TSpontOracle);

void BM_GK15Integral(benchmark::State& state) {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::quad::integrate(f, 0.0, 30.0));
  }
}
BENCHMARK(BM_GK15Integral);

void BM_SpontRateGaussian(benchmark::State& state) {
  const udw::MomentumDensity d = udw::gaussian_density(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::spont_rate(d, kParams));
  }
}
BENCHMARK(BM_SpontRateGaussian);

void BM_SpontRateCoherentPair(benchmark::State& state) {
  const udw::MomentumDensity d = udw::coherent_pair_density(1.0, 1.0, {1.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::spont_rate(d, kParams));
  }
}
BENCHMARK(BM_SpontRateCoherentPair);

void BM_THydrogen(benchmark::State& state) {
  const double p = 1e-21;
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::hydrogen::t_hydrogen(p, kHp));
  }
}
BENCHMARK(BM_THydrogen);

void BM_HydrogenSeriesFit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(udw::hydrogen::hydrogen_series_constants(kHp));
  }
}
BENCHMARK(BM_HydrogenSeriesFit);

}  // namespace

BENCHMARK_MAIN();
