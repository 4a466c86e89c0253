#include <benchmark/benchmark.h>

#include "trlg/chaos.hpp"

static void BM_ccs_sequence(benchmark::State& state) {
  trlg::CcsKey key{0.343, 7.21, 13};
  for (auto _ : state) {
    auto seq = trlg::ccs_sequence(key, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(seq.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ccs_sequence)->Arg(16384)->Arg(65536);

static void BM_keystream_bytes(benchmark::State& state) {
  auto seq = trlg::ccs_sequence({0.417, 6.44, 16}, 65536);
  for (auto _ : state) {
    auto bytes = trlg::derive_integers(seq, 256, 0);
    benchmark::DoNotOptimize(bytes.data());
  }
  state.SetItemsProcessed(state.iterations() * 65536);
}
BENCHMARK(BM_keystream_bytes);
