#include <benchmark/benchmark.h>

#include "fes/pipeline.hpp"
#include "fes/similarity.hpp"
#include "fes/synth.hpp"

// Microbenchmarks for the hot path: synthesis, Welch estimation, slope
// extraction. Record/segment sizes mirror the acceptance suite.

namespace {

using namespace fes;

SpectrumSpec bench_spec() {
  return SpectrumSpec{{{32.0, 3200.0, -1.0}}, 1e-4, true};
}

PipelineConfig bench_config(int segment_length) {
  PipelineConfig cfg;
  cfg.welch.segment_length = segment_length;
  cfg.f_lo_hz = 32.0;
  cfg.f_hi_hz = 3200.0;
  return cfg;
}

void BM_synthesize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SpectrumSpec spec = bench_spec();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    TimeSeries ts = synthesize(spec, n, 8192.0, seed++);
    benchmark::DoNotOptimize(ts.samples.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_synthesize)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_estimate_pds(benchmark::State& state) {
  const int segment = static_cast<int>(state.range(0));
  const TimeSeries ts = synthesize(bench_spec(), 1 << 20, 8192.0, 7);
  WelchConfig cfg;
  cfg.segment_length = segment;
  for (auto _ : state) {
    PowerSpectrum sp = estimate_pds(ts, cfg);
    benchmark::DoNotOptimize(sp.psd.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(ts.samples.size()));
}
BENCHMARK(BM_estimate_pds)->Arg(1024)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_local_slopes(benchmark::State& state) {
  const PipelineConfig cfg = bench_config(2048);
  const PowerSpectrum sp =
      compute_pds(synthesize(bench_spec(), 1 << 20, 8192.0, 9), cfg);
  const BandPartition part = partition_of(cfg);
  for (auto _ : state) {
    SlopeProfile prof = local_slopes(sp, part);
    benchmark::DoNotOptimize(prof.local_slopes.data());
  }
}
BENCHMARK(BM_local_slopes);

void BM_full_fingerprint(benchmark::State& state) {
  const PipelineConfig cfg = bench_config(2048);
  const TimeSeries ts = synthesize(bench_spec(), 1 << 20, 8192.0, 11);
  for (auto _ : state) {
    Fingerprint fp = compute_binary_fingerprint(ts, cfg);
    benchmark::DoNotOptimize(fp.symbols.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(ts.samples.size()));
}
BENCHMARK(BM_full_fingerprint)->Unit(benchmark::kMillisecond);

void BM_similarity(benchmark::State& state) {
  const PipelineConfig cfg = bench_config(2048);
  const TimeSeries a = synthesize(bench_spec(), 1 << 17, 8192.0, 1);
  const TimeSeries b = synthesize(bench_spec(), 1 << 17, 8192.0, 2);
  const Fingerprint fa = compute_binary_fingerprint(a, cfg);
  const Fingerprint fb = compute_binary_fingerprint(b, cfg);
  for (auto _ : state) {
    SimilarityReport r = similarity(fa, fb);
    benchmark::DoNotOptimize(r.similarity);
  }
}
BENCHMARK(BM_similarity);

}  // namespace

BENCHMARK_MAIN();
