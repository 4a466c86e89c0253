#pragma once

#include "trlg/chaos.hpp"
#include "trlg/digest.hpp"
#include "trlg/embedder.hpp"
#include "trlg/image.hpp"

namespace trlg {

// 1 = invalid 2x2 block, at (M/2)x(N/2) resolution.
using TamperMap = Grid<std::uint8_t>;

// Which source repaired each 2x2 block.
enum class Provenance : std::uint8_t {
  untouched = 0,
  primary1 = 1,
  primary2 = 2,
  secondary1 = 3,
  secondary2 = 4,
  neighbor = 5,
};
using RecoveryMap = Grid<std::uint8_t>;

// Full inverse of the embedding chain: LSB words -> key7 -> depermute/XOR ->
// unbind against the received image's own content hash.
WatermarkWords extract_watermark(const RgbImage& img, const KeyChain& keys, int mu = 2);

// Auth-bit comparison then morphological closing with a 5x5 square, all at
// block resolution.
TamperMap authenticate(const RgbImage& img, const KeyChain& keys);
TamperMap close_tamper_map(const TamperMap& raw);

struct ReconstructedDigests {
  PrimaryDigest primary;              // merged, back in source order
  Grid<std::uint8_t> primary_valid;   // per 4x4 source block
  Grid<std::uint8_t> primary_source;  // 1 or 2 where valid
  SecondaryDigest secondary;          // merged halftones, source order
  Grid<std::uint8_t> secondary_valid;
  Grid<std::uint8_t> secondary_source;  // 1 or 2 where valid
};

// Un-reorders and un-shuffles the digest copies carried by psi, drops parts
// whose carrier blocks are tampered, and merges copies (copy 1 wins).
ReconstructedDigests reconstruct_digests(const WatermarkWords& psi, const TamperMap& tamper,
                                         const KeyChain& keys, int mu = 2);

struct RecoveryResult {
  RgbImage image;
  TamperMap tamper_map;
  RecoveryMap recovery_map;
};

RecoveryResult recover(const RgbImage& img, const KeyChain& keys, int mu = 2);

}  // namespace trlg
