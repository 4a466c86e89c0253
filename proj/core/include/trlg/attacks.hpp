#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trlg/image.hpp"

namespace trlg {

enum class AttackKind { splice, copy_move, collage, vector_quantization, protocol };
enum class AttackRegion { center, left_to_right, up_to_bottom, rect };

struct AttackSpec {
  AttackKind kind = AttackKind::splice;
  double rate = 0.1;  // fraction of image area
  AttackRegion region = AttackRegion::center;
  int rx = 0, ry = 0, rw = 0, rh = 0;  // explicit rectangle (region == rect)
  std::uint64_t rng_seed = 1;
};

struct AttackResult {
  RgbImage image;
  Grid<std::uint8_t> mask;  // ground truth at 2x2-block resolution; 1 = modified
};

// Donor is required for collage, vector_quantization and protocol; a splice
// without donor fills the region with seeded noise. Ground truth marks the
// blocks whose samples actually changed.
AttackResult apply_attack(const RgbImage& img, const AttackSpec& spec,
                          const RgbImage* donor = nullptr);

AttackKind attack_kind_from_name(const std::string& name);
AttackRegion attack_region_from_name(const std::string& name);

}  // namespace trlg
