#include <benchmark/benchmark.h>

#include "trlg/halftone.hpp"
#include "trlg/rng.hpp"

static void BM_floyd_halftone(benchmark::State& state) {
  trlg::Plane p(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  trlg::SplitMix64 rng(3);
  for (auto& s : p.samples) s = static_cast<std::uint8_t>(rng.next() & 0xff);
  for (auto _ : state) {
    auto bits = trlg::floyd_halftone(p);
    benchmark::DoNotOptimize(bits.data.data());
  }
  state.SetItemsProcessed(state.iterations() * p.size());
}
BENCHMARK(BM_floyd_halftone)->Arg(256)->Arg(512);

static void BM_inverse_halftone(benchmark::State& state) {
  trlg::Plane p(256, 256, 128);
  auto bits = trlg::floyd_halftone(p);
  for (auto _ : state) {
    auto plane = trlg::inverse_halftone(bits);
    benchmark::DoNotOptimize(plane.samples.data());
  }
}
BENCHMARK(BM_inverse_halftone);
