#include <doctest.h>

#include <bit>
#include <numeric>

#include "support/synth.hpp"
#include "trlg/digest.hpp"
#include "trlg/gaopt.hpp"

using namespace trlg;

TEST_CASE("constant fitness returns that constant") {
  GaConfig cfg;
  cfg.population = 8;
  cfg.generations = 3;
  cfg.chromosome_bits = 8;
  GaResult res = ga_optimize([](const Chromosome&) { return 4.2; }, cfg);
  CHECK(res.best_fitness == 4.2);
  CHECK(res.best.size() == 8);
}

TEST_CASE("popcount fitness reaches the all-ones chromosome for most seeds") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GaConfig cfg;
    cfg.population = 32;
    cfg.generations = 60;
    cfg.chromosome_bits = 16;
    cfg.rng_seed = seed;
    GaResult res = ga_optimize(
        [](const Chromosome& c) {
          return static_cast<double>(std::accumulate(c.begin(), c.end(), 0));
        },
        cfg);
    if (res.best_fitness == 16.0) ++successes;
  }
  CHECK(successes >= 95);
}

TEST_CASE("best-ever trace is monotone and runs reproduce per seed") {
  GaConfig cfg;
  cfg.population = 16;
  cfg.generations = 25;
  cfg.chromosome_bits = 12;
  cfg.rng_seed = 7;
  auto fitness = [](const Chromosome& c) {
    double v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) v += c[i] ? static_cast<double>(i) : 0.0;
    return v;
  };
  GaResult a = ga_optimize(fitness, cfg);
  GaResult b = ga_optimize(fitness, cfg);
  CHECK(a.best == b.best);
  CHECK(a.trace == b.trace);
  for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i] >= a.trace[i - 1]);
}

TEST_CASE("config validation") {
  GaConfig bad;
  bad.population = 1;
  CHECK_THROWS_AS(bad.validate(), image_error);
  bad = GaConfig{};
  bad.elitism = bad.population;
  CHECK_THROWS_AS(bad.validate(), image_error);
  bad = GaConfig{};
  bad.mutation_rate = 1.5;
  CHECK_THROWS_AS(bad.validate(), image_error);
}

TEST_CASE("threshold search: 512x512 covers a 4x4 tile grid and stays in range") {
  Plane y = testsupport::cloud_plane(512, 512, 55);
  GaConfig cfg;
  cfg.population = 8;
  cfg.generations = 4;
  cfg.rng_seed = 3;
  Grid<double> thr = optimize_thresholds(y, cfg);
  CHECK(thr.width == 4);
  CHECK(thr.height == 4);
  for (double t : thr.data) {
    CHECK(t >= 0.0);
    CHECK(t <= 64.0);
  }
}

TEST_CASE("GA threshold lands within 1% of the exhaustive oracle") {
  Plane tile(128, 128);
  // half flat gradient, half texture: the threshold actually matters here
  SplitMix64 rng(8);
  for (int yy = 0; yy < 128; ++yy)
    for (int xx = 0; xx < 128; ++xx)
      tile.at(yy, xx) = xx < 64 ? static_cast<std::uint8_t>(yy / 2 + 60)
                                : static_cast<std::uint8_t>(rng.next() % 160 + 40);
  double oracle_best = 0.0;
  for (int v = 0; v < 256; ++v)
    oracle_best = std::max(oracle_best, threshold_fitness(tile, static_cast<std::uint8_t>(v)));

  GaConfig cfg;
  cfg.population = 24;
  cfg.generations = 30;
  cfg.rng_seed = 5;
  std::array<double, 256> cache;
  std::array<bool, 256> have{};
  GaResult res = ga_optimize(
      [&](const Chromosome& c) {
        int v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 1) | c[static_cast<std::size_t>(i)];
        if (!have[static_cast<std::size_t>(v)]) {
          cache[static_cast<std::size_t>(v)] = threshold_fitness(tile, static_cast<std::uint8_t>(v));
          have[static_cast<std::size_t>(v)] = true;
        }
        return cache[static_cast<std::size_t>(v)];
      },
      cfg);
  CHECK(res.best_fitness >= oracle_best * 0.99);
}

TEST_CASE("all-texture noise tile picks a threshold below its minimum block std") {
  Plane tile = testsupport::random_plane(128, 128, 77);
  GaConfig cfg;
  cfg.population = 16;
  cfg.generations = 12;
  cfg.rng_seed = 11;
  Grid<double> thr = optimize_thresholds(tile, cfg);
  Grid<double> stds = block_std_map(tile);
  double min_std = 1e9;
  for (double s : stds.data) min_std = std::min(min_std, s);
  // uniform noise blocks carry std ~73; texture masks fit them better, so the
  // chosen threshold classifies every block as texture
  CHECK(thr.at(0, 0) < min_std);
}

TEST_CASE("key7 search honors the cost tables and the all-zero baseline") {
  std::vector<std::array<std::uint64_t, 256>> costs(1);
  for (int b = 0; b < 256; ++b) costs[0][static_cast<std::size_t>(b)] = 1000;
  costs[0][0x5a] = 10;
  GaConfig cfg;
  cfg.population = 24;
  cfg.generations = 40;
  cfg.rng_seed = 13;
  std::uint32_t key = optimize_key7(costs, 1 << 12, cfg);
  CHECK(key == 0x5a);

  // when zero already wins, the seeded all-zero chromosome guarantees it
  for (int b = 1; b < 256; ++b) costs[0][static_cast<std::size_t>(b)] = 2000;
  costs[0][0] = 1;
  cfg.generations = 2;
  CHECK(optimize_key7(costs, 1 << 12, cfg) == 0);
}
