#include <benchmark/benchmark.h>

#include "trlg/metrics.hpp"
#include "trlg/rng.hpp"

namespace {
trlg::Plane noisy(int n, std::uint64_t seed) {
  trlg::Plane p(n, n);
  trlg::SplitMix64 rng(seed);
  for (auto& s : p.samples) s = static_cast<std::uint8_t>(rng.next() & 0xff);
  return p;
}
}  // namespace

static void BM_psnr_512(benchmark::State& state) {
  trlg::Plane a = noisy(512, 1), b = noisy(512, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trlg::psnr(a, b));
}
BENCHMARK(BM_psnr_512);

static void BM_ssim_512(benchmark::State& state) {
  trlg::Plane a = noisy(512, 1), b = noisy(512, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trlg::ssim(a, b));
}
BENCHMARK(BM_ssim_512);
