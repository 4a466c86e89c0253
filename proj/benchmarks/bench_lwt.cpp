#include <benchmark/benchmark.h>

#include "trlg/lwt.hpp"
#include "trlg/rng.hpp"

namespace {
trlg::Plane random_plane(int n) {
  trlg::Plane p(n, n);
  trlg::SplitMix64 rng(7);
  for (auto& s : p.samples) s = static_cast<std::uint8_t>(rng.next() & 0xff);
  return p;
}
}  // namespace

static void BM_forward_haar(benchmark::State& state) {
  trlg::Plane p = random_plane(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto bands = trlg::forward_haar(p);
    benchmark::DoNotOptimize(bands.ll.data.data());
  }
  state.SetItemsProcessed(state.iterations() * p.size());
}
BENCHMARK(BM_forward_haar)->Arg(256)->Arg(512);

static void BM_inverse_haar(benchmark::State& state) {
  auto bands = trlg::forward_haar(random_plane(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto plane = trlg::inverse_haar(bands);
    benchmark::DoNotOptimize(plane.data.data());
  }
}
BENCHMARK(BM_inverse_haar)->Arg(256)->Arg(512);
