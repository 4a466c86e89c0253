#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "trlg/image.hpp"

namespace trlg {

struct GaConfig {
  int population = 32;
  int generations = 50;
  double crossover_rate = 0.8;
  double mutation_rate = 0.02;
  int elitism = 2;
  std::uint64_t rng_seed = 1;
  int chromosome_bits = 8;

  void validate() const;
};

using Chromosome = std::vector<std::uint8_t>;  // one byte per bit

struct GaResult {
  Chromosome best;
  double best_fitness = 0.0;
  std::vector<double> trace;  // best-ever fitness per generation
};

// Roulette-wheel selection, single-point crossover, bit-flip mutation,
// elitism. Maximizes fitness; fully reproducible from rng_seed. Chromosomes
// in `seeds` are injected into the initial population.
GaResult ga_optimize(const std::function<double(const Chromosome&)>& fitness, const GaConfig& cfg,
                     const std::vector<Chromosome>& seeds = {});

// Per-tile texture thresholds (one value per 128x128 host tile). Each tile's
// GA maximizes SSIM between the tile and its reconstructed digest; the 8-bit
// chromosome maps linearly onto [0, 64]. Non-multiples of the tile size are
// edge-padded internally.
Grid<double> optimize_thresholds(const Plane& y, const GaConfig& cfg, int mu = 2,
                                 std::vector<double>* trace = nullptr);

// Exhaustive 256-value scan of one tile's threshold fitness (the GA oracle).
double threshold_fitness(const Plane& tile, std::uint8_t chrom_value, int mu = 2);
double threshold_from_byte(std::uint8_t v);

// key7 search over per-plane embedding-cost tables. plane_costs[k][b] is the
// total squared pixel error of plane k when its key byte is b; sample_count
// converts the summed cost into the PSNR the GA maximizes. The all-zero key
// is always seeded, so encryption never lands below the unencrypted baseline.
std::uint32_t optimize_key7(const std::vector<std::array<std::uint64_t, 256>>& plane_costs,
                            std::uint64_t sample_count, const GaConfig& cfg,
                            std::vector<double>* trace = nullptr);

}  // namespace trlg
