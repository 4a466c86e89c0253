#include "trlg/gaopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

#include "trlg/digest.hpp"
#include "trlg/metrics.hpp"
#include "trlg/parallel.hpp"
#include "trlg/rng.hpp"

namespace trlg {

void GaConfig::validate() const {
  if (population < 2) throw image_error("ga: population must be >= 2");
  if (generations < 1) throw image_error("ga: generations must be >= 1");
  if (crossover_rate < 0 || crossover_rate > 1 || mutation_rate < 0 || mutation_rate > 1)
    throw image_error("ga: rates must lie in [0, 1]");
  if (elitism < 0 || elitism >= population) throw image_error("ga: elitism must be < population");
  if (chromosome_bits < 1) throw image_error("ga: chromosome_bits must be >= 1");
}

GaResult ga_optimize(const std::function<double(const Chromosome&)>& fitness, const GaConfig& cfg,
                     const std::vector<Chromosome>& seeds) {
  cfg.validate();
  SplitMix64 rng(cfg.rng_seed);

  std::vector<Chromosome> pop;
  pop.reserve(static_cast<std::size_t>(cfg.population));
  for (const Chromosome& s : seeds) {
    if (pop.size() == static_cast<std::size_t>(cfg.population)) break;
    Chromosome c = s;
    c.resize(static_cast<std::size_t>(cfg.chromosome_bits), 0);
    pop.push_back(std::move(c));
  }
  while (pop.size() < static_cast<std::size_t>(cfg.population)) {
    Chromosome c(static_cast<std::size_t>(cfg.chromosome_bits));
    for (auto& b : c) b = static_cast<std::uint8_t>(rng.next() & 1u);
    pop.push_back(std::move(c));
  }

  std::vector<double> fit(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);

  GaResult result;
  auto update_best = [&] {
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (result.trace.empty() && i == 0) {
        result.best = pop[0];
        result.best_fitness = fit[0];
      }
      if (fit[i] > result.best_fitness) {
        result.best = pop[i];
        result.best_fitness = fit[i];
      }
    }
    result.trace.push_back(result.best_fitness);
  };
  update_best();

  std::vector<std::size_t> order(pop.size());
  for (int gen = 0; gen < cfg.generations; ++gen) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });

    // roulette weights, shifted so the worst still has a sliver of a chance
    double lo = *std::min_element(fit.begin(), fit.end());
    double hi = *std::max_element(fit.begin(), fit.end());
    double eps = (hi - lo) * 1e-6 + 1e-12;
    std::vector<double> cum(fit.size());
    double total = 0.0;
    for (std::size_t i = 0; i < fit.size(); ++i) {
      total += fit[i] - lo + eps;
      cum[i] = total;
    }
    auto select = [&]() -> const Chromosome& {
      double u = rng.unit() * total;
      std::size_t i = static_cast<std::size_t>(
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
      if (i >= pop.size()) i = pop.size() - 1;
      return pop[i];
    };

    std::vector<Chromosome> next;
    next.reserve(pop.size());
    for (int e = 0; e < cfg.elitism; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);
    while (next.size() < pop.size()) {
      Chromosome a = select();
      Chromosome b = select();
      if (rng.unit() < cfg.crossover_rate && cfg.chromosome_bits > 1) {
        int cut = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.chromosome_bits - 1)));
        for (int i = cut; i < cfg.chromosome_bits; ++i) std::swap(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
      }
      for (Chromosome* c : {&a, &b}) {
        for (auto& bit : *c)
          if (rng.unit() < cfg.mutation_rate) bit ^= 1u;
        if (next.size() < pop.size()) next.push_back(*c);
      }
    }
    pop = std::move(next);
    for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);
    update_best();
  }
  return result;
}

double threshold_from_byte(std::uint8_t v) { return static_cast<double>(v) / 255.0 * 64.0; }

double threshold_fitness(const Plane& tile, std::uint8_t chrom_value, int mu) {
  YuvImage yuv;
  yuv.y = tile;
  Grid<double> thr(tile.width / 4, tile.height / 4, threshold_from_byte(chrom_value));
  PrimaryDigest d = generate_primary(yuv, thr, mu);
  Grid<std::uint8_t> all_valid(d.blocks_w(), d.blocks_h(), 1);
  HalfReconstruction rec = reconstruct_primary(d, all_valid);
  Plane up = resize(rec.image.planes[0], 2.0);
  return ssim(tile, up);
}

namespace {

std::uint32_t chromosome_to_uint(const Chromosome& c, int offset, int nbits) {
  std::uint32_t v = 0;
  for (int i = 0; i < nbits; ++i) v = (v << 1) | (c[static_cast<std::size_t>(offset + i)] & 1u);
  return v;
}

}  // namespace

Grid<double> optimize_thresholds(const Plane& y, const GaConfig& cfg, int mu,
                                 std::vector<double>* trace) {
  constexpr int kTile = 128;
  Plane padded = pad_to_multiple(y, kTile);
  int tiles_w = padded.width / kTile, tiles_h = padded.height / kTile;
  Grid<double> out(tiles_w, tiles_h);
  std::vector<std::vector<double>> traces(static_cast<std::size_t>(tiles_w) * tiles_h);

  parallel_for(static_cast<std::size_t>(tiles_w) * tiles_h, [&](std::size_t t) {
    int ty = static_cast<int>(t) / tiles_w, tx = static_cast<int>(t) % tiles_w;
    Plane tile(kTile, kTile);
    for (int yy = 0; yy < kTile; ++yy)
      for (int xx = 0; xx < kTile; ++xx) tile.at(yy, xx) = padded.at(ty * kTile + yy, tx * kTile + xx);

    // The 8-bit chromosome admits only 256 distinct thresholds; memoize so
    // the GA (and the exhaustive oracle) never recompute one.
    std::array<double, 256> cache;
    std::array<bool, 256> have{};
    auto fitness = [&](const Chromosome& c) {
      std::uint8_t v = static_cast<std::uint8_t>(chromosome_to_uint(c, 0, 8));
      if (!have[v]) {
        cache[v] = threshold_fitness(tile, v, mu);
        have[v] = true;
      }
      return cache[v];
    };
    GaConfig tile_cfg = cfg;
    tile_cfg.chromosome_bits = 8;
    SplitMix64 mix(cfg.rng_seed ^ (0x51ed2700u + t * 0x9e3779b9u));
    tile_cfg.rng_seed = mix.next();
    GaResult res = ga_optimize(fitness, tile_cfg);
    out.at(ty, tx) = threshold_from_byte(static_cast<std::uint8_t>(chromosome_to_uint(res.best, 0, 8)));
    traces[t] = std::move(res.trace);
  });

  if (trace) {
    trace->clear();
    for (const auto& t : traces) trace->insert(trace->end(), t.begin(), t.end());
  }
  return out;
}

std::uint32_t optimize_key7(const std::vector<std::array<std::uint64_t, 256>>& plane_costs,
                            std::uint64_t sample_count, const GaConfig& cfg,
                            std::vector<double>* trace) {
  int planes = static_cast<int>(plane_costs.size());
  if (planes != 1 && planes != 3) throw image_error("optimize_key7: expected 1 or 3 planes");
  GaConfig key_cfg = cfg;
  key_cfg.chromosome_bits = 8 * planes;

  auto fitness = [&](const Chromosome& c) {
    std::uint64_t total = 0;
    for (int k = 0; k < planes; ++k)
      total += plane_costs[static_cast<std::size_t>(k)][chromosome_to_uint(c, 8 * k, 8)];
    if (total == 0) return 1e9;  // already-matching LSBs: PSNR has no ceiling
    double mse = static_cast<double>(total) / static_cast<double>(sample_count);
    return 10.0 * std::log10(255.0 * 255.0 / mse);
  };

  std::vector<Chromosome> seeds{Chromosome(static_cast<std::size_t>(key_cfg.chromosome_bits), 0)};
  GaResult res = ga_optimize(fitness, key_cfg, seeds);
  if (trace) *trace = res.trace;

  std::uint32_t key7 = 0;
  for (int k = 0; k < planes; ++k)
    key7 |= chromosome_to_uint(res.best, 8 * k, 8) << (8 * k);
  return key7;
}

}  // namespace trlg
