#include "trlg/scramble.hpp"

namespace trlg {

namespace {

std::uint32_t idx(int w, int y, int x) { return static_cast<std::uint32_t>(y) * w + x; }

void require(bool ok, const char* msg) {
  if (!ok) throw image_error(msg);
}

}  // namespace

std::vector<std::uint32_t> shift_aside_map(int w, int h) {
  require(w % 4 == 0 && h % 2 == 0, "shift_aside: need width % 4 == 0 and even height");
  std::vector<std::uint32_t> map(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int x1 = (x + w / 2) % w;
      int half = x1 < w / 2 ? 0 : w / 2;
      int lx = (x1 - half + w / 4) % (w / 2);
      int y1 = (y + h / 2) % h;
      map[idx(w, y, x)] = idx(w, y1, half + lx);
    }
  }
  return map;
}

std::vector<std::uint32_t> mirror_aside_map(int w, int h) {
  require(w % 4 == 0 && h % 4 == 0, "mirror_aside: need dimensions % 4 == 0");
  std::vector<std::uint32_t> map(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int y1 = (y + h / 2) % h;                  // swap top/bottom halves
      int half = y1 < h / 2 ? 0 : h / 2;
      int ly = (y1 - half + h / 4) % (h / 2);    // vertical sub-swap inside the half
      int sub = (x / (w / 2)) * (w / 2);
      int lx = w / 2 - 1 - (x - sub);            // mirror columns inside the sub-block
      map[idx(w, y, x)] = idx(w, half + ly, sub + lx);
    }
  }
  return map;
}

std::vector<std::uint32_t> partner_block_1_map(int w, int h) {
  require(w % 2 == 0 && h % 2 == 0, "partner_block_1: need even dimensions");
  std::vector<std::uint32_t> map(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      map[idx(w, y, x)] = idx(w, (y + h / 2) % h, (x + w / 2) % w);
  return map;
}

std::vector<std::uint32_t> partner_block_2_map(int w, int h) {
  require(w % 4 == 0 && h % 4 == 0, "partner_block_2: need dimensions % 4 == 0");
  std::vector<std::uint32_t> map(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int x1 = (x + w / 2) % w;  // horizontal quadrant swap
      int qx = (x1 / (w / 2)) * (w / 2);
      int qy = (y / (h / 2)) * (h / 2);
      int lx = (x1 - qx + w / 4) % (w / 2);  // diagonal sub-quadrant exchange
      int ly = (y - qy + h / 4) % (h / 2);
      map[idx(w, y, x)] = idx(w, qy + ly, qx + lx);
    }
  }
  return map;
}

namespace {

template <typename T>
Grid<T> permute_grid(const Grid<T>& g, const std::vector<std::uint32_t>& perm, bool inverse) {
  Grid<T> out(g.width, g.height);
  if (inverse) {
    for (std::size_t i = 0; i < g.size(); ++i) out.data[perm[i]] = g.data[i];
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) out.data[i] = g.data[perm[i]];
  }
  return out;
}

PrimaryDigest map_digest(const PrimaryDigest& d, auto&& fn) {
  PrimaryDigest out = d;
  out.gamma = fn(d.gamma);
  out.ll = fn(d.ll);
  out.lh = fn(d.lh);
  out.hl = fn(d.hl);
  out.hh = fn(d.hh);
  if (d.color()) {
    out.u = fn(d.u);
    out.v = fn(d.v);
  }
  return out;
}

}  // namespace

PrimaryDigest shuffle_digest(const PrimaryDigest& d, const CcsKey& key) {
  auto perm = permutation_from_sequence(ccs_sequence(key, d.gamma.size()));
  return map_digest(d, [&](const auto& g) { return permute_grid(g, perm, false); });
}

PrimaryDigest unshuffle_digest(const PrimaryDigest& d, const CcsKey& key) {
  auto perm = permutation_from_sequence(ccs_sequence(key, d.gamma.size()));
  return map_digest(d, [&](const auto& g) { return permute_grid(g, perm, true); });
}

PrimaryDigest reorder_digest(const PrimaryDigest& d, const std::vector<std::uint32_t>& map,
                             bool inverse) {
  if (inverse)
    return map_digest(d, [&](const auto& g) { return invert_position_map(g, map); });
  return map_digest(d, [&](const auto& g) { return apply_position_map(g, map); });
}

}  // namespace trlg
