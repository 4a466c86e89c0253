#pragma once

#include <cstdint>
#include <vector>

#include "trlg/chaos.hpp"
#include "trlg/digest.hpp"
#include "trlg/image.hpp"

namespace trlg {

// Fixed dispersal reorderings. All four are involutions, and their image-
// quarter maps are pairwise arranged so that the four carriers of any source
// block's recovery data land in three distinct quarters, none of them the
// source quarter:
//   shift_aside      left/right half swap + in-half diagonal quarter swap  (diagonal)
//   mirror_aside     top/bottom half swap + in-half vertical sub-swap,
//                    columns mirrored inside each sub-block               (vertical)
//   partner_block_1  diagonal quadrant exchange                           (diagonal)
//   partner_block_2  horizontal quadrant swap + in-quadrant diagonal
//                    sub-quadrant exchange                                (horizontal)

// Position maps: map[src_index] = dst_index over a row-major w*h grid.
std::vector<std::uint32_t> shift_aside_map(int w, int h);    // h % 2 == 0, w % 4 == 0
std::vector<std::uint32_t> mirror_aside_map(int w, int h);   // w, h % 4 == 0
std::vector<std::uint32_t> partner_block_1_map(int w, int h);  // w, h % 2 == 0
std::vector<std::uint32_t> partner_block_2_map(int w, int h);  // w, h % 4 == 0

template <typename T>
Grid<T> apply_position_map(const Grid<T>& g, const std::vector<std::uint32_t>& map) {
  Grid<T> out(g.width, g.height);
  for (std::size_t i = 0; i < g.size(); ++i) out.data[map[i]] = g.data[i];
  return out;
}

template <typename T>
Grid<T> invert_position_map(const Grid<T>& g, const std::vector<std::uint32_t>& map) {
  Grid<T> out(g.width, g.height);
  for (std::size_t i = 0; i < g.size(); ++i) out.data[i] = g.data[map[i]];
  return out;
}

template <typename T>
Grid<T> shift_aside(const Grid<T>& g) {
  return apply_position_map(g, shift_aside_map(g.width, g.height));
}
template <typename T>
Grid<T> mirror_aside(const Grid<T>& g) {
  return apply_position_map(g, mirror_aside_map(g.width, g.height));
}
template <typename T>
Grid<T> partner_block_1(const Grid<T>& g) {
  return apply_position_map(g, partner_block_1_map(g.width, g.height));
}
template <typename T>
Grid<T> partner_block_2(const Grid<T>& g) {
  return apply_position_map(g, partner_block_2_map(g.width, g.height));
}

// Chaotic shuffle of every per-block field by the key's sorting permutation:
// shuffled[i] = original[perm[i]] (and unshuffle restores exactly).
PrimaryDigest shuffle_digest(const PrimaryDigest& d, const CcsKey& key);
PrimaryDigest unshuffle_digest(const PrimaryDigest& d, const CcsKey& key);

// Field-wise position reorder of a whole digest.
PrimaryDigest reorder_digest(const PrimaryDigest& d, const std::vector<std::uint32_t>& map,
                             bool inverse);

}  // namespace trlg
