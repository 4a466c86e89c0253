#include <benchmark/benchmark.h>

#include "trlg/embedder.hpp"
#include "trlg/rng.hpp"

namespace {
trlg::RgbImage noise_image(int n, int planes) {
  trlg::RgbImage img;
  trlg::SplitMix64 rng(11);
  for (int k = 0; k < planes; ++k) {
    trlg::Plane p(n, n);
    for (auto& s : p.samples) s = static_cast<std::uint8_t>(rng.next() & 0xff);
    img.planes.push_back(std::move(p));
  }
  return img;
}
}  // namespace

static void BM_lsb_match_block(benchmark::State& state) {
  std::array<std::uint8_t, 4> samples{10, 250, 128, 7};
  std::uint8_t word = 0xa5;
  for (auto _ : state) {
    auto out = trlg::lsb_match_embed(samples, word, -1);
    benchmark::DoNotOptimize(out.data());
    word = static_cast<std::uint8_t>(word * 31 + 7);
  }
}
BENCHMARK(BM_lsb_match_block);

static void BM_embed_words_512_gray(benchmark::State& state) {
  trlg::RgbImage host = noise_image(512, 1);
  trlg::KeyChain keys = trlg::generate_keychain(5);
  trlg::CandidateMap cand = trlg::make_candidate_map(256, 256, keys.key3, keys.key4, false);
  trlg::WatermarkWords words;
  words.planes.assign(1, trlg::Grid<std::uint8_t>(256, 256, 0x5a));
  for (auto _ : state) {
    auto out = trlg::embed_words(host, words, cand);
    benchmark::DoNotOptimize(out.planes.data());
  }
  state.SetItemsProcessed(state.iterations() * host.planes[0].size());
}
BENCHMARK(BM_embed_words_512_gray);

static void BM_content_hash_512_gray(benchmark::State& state) {
  trlg::RgbImage host = noise_image(512, 1);
  trlg::KeyChain keys = trlg::generate_keychain(5);
  trlg::CandidateMap cand = trlg::make_candidate_map(256, 256, keys.key3, keys.key4, false);
  for (auto _ : state) {
    auto hash = trlg::content_hash(host, cand);
    benchmark::DoNotOptimize(hash.r1.data.data());
  }
}
BENCHMARK(BM_content_hash_512_gray);
