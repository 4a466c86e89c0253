#pragma once

#include "trlg/halftone.hpp"
#include "trlg/image.hpp"
#include "trlg/lwt.hpp"

namespace trlg {

// 1 = texture, 0 = flat; one flag per 4x4 host block.
using TextureMap = Grid<std::uint8_t>;

// The DLG primary digest: per 4x4 host block, a texture flag, masked
// quantized Haar coefficients of the half-resolution luma, and (color only)
// 7-bit reduced chroma from the quarter-resolution U/V.
//
// Packed block layout, MSB-first (20 bits luma + 14 bits chroma for color):
//   gamma=1:  [G][LL>>2:5] [sLH][|LH|>>2:4] [sHL][|HL|>>2:4] [sHH][|HH|>>3:3]
//   gamma=0:  [G][LL:7]    [sLH][|LH|>>2:3] [sHL][|HL|>>2:3] [sHH][|HH|>>2:3]
//   color:    ... [U:7][V:7]
// Both branches describe the coefficients in 19 bits; the flat branch keeps
// the full 7-bit LL unmasked, matching the per-class masks the coefficients
// were reduced with.
struct PrimaryDigest {
  Grid<std::uint8_t> gamma;
  Grid<std::int16_t> ll, lh, hl, hh;
  Grid<std::uint8_t> u, v;  // empty for grayscale hosts
  int mu = 2;

  bool color() const { return !u.data.empty(); }
  int bits_per_block() const { return color() ? 34 : 20; }
  int blocks_w() const { return gamma.width; }
  int blocks_h() const { return gamma.height; }
};

// Half-resolution halftones, one binary plane per host plane.
struct SecondaryDigest {
  std::vector<BinaryPlane> planes;
};

// Population standard deviation of every 4x4 block.
Grid<double> block_std_map(const Plane& y);

// gamma = 1 where threshold < std. Grids must be conformable.
TextureMap classify_texture(const Grid<double>& std_map, const Grid<double>& thresholds);

// Expand a per-tile threshold grid (one value per 128x128 host tile) to one
// value per 4x4 block.
Grid<double> tile_thresholds(const Grid<double>& per_tile, int blocks_w, int blocks_h,
                             int tile_pixels = 128);

// Build the digest from a (4-divisible) host. thresholds carries one value
// per 4x4 block (see tile_thresholds).
PrimaryDigest generate_primary(const YuvImage& yuv, const Grid<double>& thresholds, int mu = 2);

SecondaryDigest generate_secondary(const RgbImage& rgb);

// Codec for one block. Round-trips exactly; masked-away bits return as zeros.
std::vector<std::uint8_t> pack_primary_block(const PrimaryDigest& d, int by, int bx);
void unpack_primary_block(const std::vector<std::uint8_t>& bits, bool color, PrimaryDigest& d,
                          int by, int bx);

// Reduce a quantized coefficient exactly the way the packer stores it:
// saturating LSB-rounding add, then the per-class mask. Idempotent.
int mask_coefficient(int value, int mask, int theta, int field_max);

struct HalfReconstruction {
  RgbImage image;            // half host resolution, 1 or 3 planes
  Grid<std::uint8_t> valid;  // per half-resolution pixel
};

// Dequantize + inverse lifting (+ chroma fill and upscale for color) for the
// blocks marked valid. With no valid blocks the result is fully unknown.
HalfReconstruction reconstruct_primary(const PrimaryDigest& d, const Grid<std::uint8_t>& valid_blocks);

}  // namespace trlg
