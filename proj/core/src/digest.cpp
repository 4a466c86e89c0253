#include "trlg/digest.hpp"

#include <cmath>

#include "trlg/bits.hpp"

namespace trlg {

namespace {

struct MaskSet {
  int ll_mask, ll_theta;
  int lh_mask, lh_theta;  // hl uses the lh masks
  int hh_mask, hh_theta;
};

// Eq.-style per-class masks: texture keeps more detail bits, flat keeps the
// full 7-bit LL. theta is the LSB-rounding offset (2 when two low bits drop,
// 4 when three drop).
constexpr MaskSet kTexture{124, 2, 60, 2, 56, 4};
constexpr MaskSet kFlat{127, 0, 28, 2, 28, 2};

int field_max_for(int mask) {
  int hi = 0;
  for (int b = 0; b < 8; ++b)
    if (mask & (1 << b)) hi = b;
  return (1 << (hi + 1)) - 1;
}

int mask_signed(int value, int mask, int theta) {
  int mag = std::abs(value);
  mag = mask_coefficient(mag, mask, theta, field_max_for(mask));
  if (mag == 0) return 0;
  return value < 0 ? -mag : mag;
}

}  // namespace

int mask_coefficient(int value, int mask, int theta, int field_max) {
  int v = std::min(value + theta, field_max);
  return v & mask;
}

Grid<double> block_std_map(const Plane& y) {
  if (y.width % 4 != 0 || y.height % 4 != 0)
    throw image_error("block_std_map: dimensions must be divisible by 4");
  Grid<double> out(y.width / 4, y.height / 4);
  for (int by = 0; by < out.height; ++by) {
    for (int bx = 0; bx < out.width; ++bx) {
      double sum = 0.0, sum_sq = 0.0;
      for (int dy = 0; dy < 4; ++dy)
        for (int dx = 0; dx < 4; ++dx) {
          double v = y.at(4 * by + dy, 4 * bx + dx);
          sum += v;
          sum_sq += v * v;
        }
      double mean = sum / 16.0;
      out.at(by, bx) = std::sqrt(std::max(0.0, sum_sq / 16.0 - mean * mean));
    }
  }
  return out;
}

TextureMap classify_texture(const Grid<double>& std_map, const Grid<double>& thresholds) {
  if (std_map.width != thresholds.width || std_map.height != thresholds.height)
    throw image_error("classify_texture: grids not conformable");
  TextureMap out(std_map.width, std_map.height);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = thresholds.data[i] < std_map.data[i] ? 1 : 0;
  return out;
}

Grid<double> tile_thresholds(const Grid<double>& per_tile, int blocks_w, int blocks_h,
                             int tile_pixels) {
  int per_tile_blocks = tile_pixels / 4;
  Grid<double> out(blocks_w, blocks_h);
  for (int by = 0; by < blocks_h; ++by)
    for (int bx = 0; bx < blocks_w; ++bx) {
      int ty = std::min(by / per_tile_blocks, per_tile.height - 1);
      int tx = std::min(bx / per_tile_blocks, per_tile.width - 1);
      out.at(by, bx) = per_tile.at(ty, tx);
    }
  return out;
}

PrimaryDigest generate_primary(const YuvImage& yuv, const Grid<double>& thresholds, int mu) {
  const Plane& y = yuv.y;
  if (y.width % 4 != 0 || y.height % 4 != 0)
    throw image_error("generate_primary: dimensions must be divisible by 4");
  PrimaryDigest d;
  d.mu = mu;
  d.gamma = classify_texture(block_std_map(y), thresholds);

  Plane y_half = resize(y, 0.5);
  WaveletBands bands = forward_haar(y_half);
  int bw = bands.width(), bh = bands.height();
  d.ll = Grid<std::int16_t>(bw, bh);
  d.lh = Grid<std::int16_t>(bw, bh);
  d.hl = Grid<std::int16_t>(bw, bh);
  d.hh = Grid<std::int16_t>(bw, bh);
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      const MaskSet& m = d.gamma.at(by, bx) ? kTexture : kFlat;
      int ll = quantize(bands.ll.at(by, bx), mu);
      int lh = quantize(bands.lh.at(by, bx), mu);
      int hl = quantize(bands.hl.at(by, bx), mu);
      int hh = quantize(bands.hh.at(by, bx), mu);
      d.ll.at(by, bx) = static_cast<std::int16_t>(
          mask_coefficient(ll, m.ll_mask, m.ll_theta, field_max_for(m.ll_mask)));
      d.lh.at(by, bx) = static_cast<std::int16_t>(mask_signed(lh, m.lh_mask, m.lh_theta));
      d.hl.at(by, bx) = static_cast<std::int16_t>(mask_signed(hl, m.lh_mask, m.lh_theta));
      d.hh.at(by, bx) = static_cast<std::int16_t>(mask_signed(hh, m.hh_mask, m.hh_theta));
    }
  }

  if (yuv.has_chroma()) {
    Plane uq = resize(yuv.u, 0.25);
    Plane vq = resize(yuv.v, 0.25);
    d.u = Grid<std::uint8_t>(bw, bh);
    d.v = Grid<std::uint8_t>(bw, bh);
    for (std::size_t i = 0; i < d.u.size(); ++i) {
      d.u.data[i] = static_cast<std::uint8_t>((uq.samples[i] & 254) >> 1);
      d.v.data[i] = static_cast<std::uint8_t>((vq.samples[i] & 254) >> 1);
    }
  }
  return d;
}

SecondaryDigest generate_secondary(const RgbImage& rgb) {
  if (rgb.width() % 4 != 0 || rgb.height() % 4 != 0)
    throw image_error("generate_secondary: dimensions must be divisible by 4");
  SecondaryDigest s;
  for (const Plane& p : rgb.planes) s.planes.push_back(floyd_halftone(resize(p, 0.5)));
  return s;
}

std::vector<std::uint8_t> pack_primary_block(const PrimaryDigest& d, int by, int bx) {
  BitWriter w;
  int gamma = d.gamma.at(by, bx);
  w.put_bit(static_cast<std::uint8_t>(gamma));
  auto put_detail = [&](int value, int shift, int nbits) {
    w.put_bit(value < 0 ? 1 : 0);
    w.put(static_cast<std::uint32_t>(std::abs(value) >> shift), nbits);
  };
  if (gamma) {
    w.put(static_cast<std::uint32_t>(d.ll.at(by, bx)) >> 2, 5);
    put_detail(d.lh.at(by, bx), 2, 4);
    put_detail(d.hl.at(by, bx), 2, 4);
    put_detail(d.hh.at(by, bx), 3, 3);
  } else {
    w.put(static_cast<std::uint32_t>(d.ll.at(by, bx)), 7);
    put_detail(d.lh.at(by, bx), 2, 3);
    put_detail(d.hl.at(by, bx), 2, 3);
    put_detail(d.hh.at(by, bx), 2, 3);
  }
  if (d.color()) {
    w.put(d.u.at(by, bx), 7);
    w.put(d.v.at(by, bx), 7);
  }
  return w.bits;
}

void unpack_primary_block(const std::vector<std::uint8_t>& bits, bool color, PrimaryDigest& d,
                          int by, int bx) {
  if (bits.size() != static_cast<std::size_t>(color ? 34 : 20))
    throw image_error("unpack_primary_block: wrong bit count");
  BitReader r(bits);
  int gamma = r.get_bit();
  d.gamma.at(by, bx) = static_cast<std::uint8_t>(gamma);
  auto get_detail = [&](int shift, int nbits) -> std::int16_t {
    int sign = r.get_bit();
    int mag = static_cast<int>(r.get(nbits)) << shift;
    if (mag == 0) return 0;
    return static_cast<std::int16_t>(sign ? -mag : mag);
  };
  if (gamma) {
    d.ll.at(by, bx) = static_cast<std::int16_t>(r.get(5) << 2);
    d.lh.at(by, bx) = get_detail(2, 4);
    d.hl.at(by, bx) = get_detail(2, 4);
    d.hh.at(by, bx) = get_detail(3, 3);
  } else {
    d.ll.at(by, bx) = static_cast<std::int16_t>(r.get(7));
    d.lh.at(by, bx) = get_detail(2, 3);
    d.hl.at(by, bx) = get_detail(2, 3);
    d.hh.at(by, bx) = get_detail(2, 3);
  }
  if (color) {
    d.u.at(by, bx) = static_cast<std::uint8_t>(r.get(7));
    d.v.at(by, bx) = static_cast<std::uint8_t>(r.get(7));
  }
}

namespace {

// Iterative 4-neighbor mean fill until no unknown cells remain. Values and
// validity are updated sweep-by-sweep, so the order is deterministic.
void neighbor_fill(Grid<double>& values, Grid<std::uint8_t>& valid) {
  int w = values.width, h = values.height;
  bool any_valid = false;
  for (std::size_t i = 0; i < valid.size(); ++i) any_valid |= valid.data[i] != 0;
  if (!any_valid) return;
  for (;;) {
    bool missing = false, progressed = false;
    Grid<double> next_values = values;
    Grid<std::uint8_t> next_valid = valid;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (valid.at(y, x)) continue;
        missing = true;
        double sum = 0.0;
        int count = 0;
        auto probe = [&](int yy, int xx) {
          if (yy < 0 || yy >= h || xx < 0 || xx >= w || !valid.at(yy, xx)) return;
          sum += values.at(yy, xx);
          ++count;
        };
        probe(y - 1, x);
        probe(y + 1, x);
        probe(y, x - 1);
        probe(y, x + 1);
        if (count > 0) {
          next_values.at(y, x) = sum / count;
          next_valid.at(y, x) = 1;
          progressed = true;
        }
      }
    }
    values = std::move(next_values);
    valid = std::move(next_valid);
    if (!missing || !progressed) break;
  }
}

}  // namespace

HalfReconstruction reconstruct_primary(const PrimaryDigest& d, const Grid<std::uint8_t>& valid_blocks) {
  int bw = d.blocks_w(), bh = d.blocks_h();
  if (valid_blocks.width != bw || valid_blocks.height != bh)
    throw image_error("reconstruct_primary: validity mask not conformable");

  WaveletBands bands{Grid<int>(bw, bh), Grid<int>(bw, bh), Grid<int>(bw, bh), Grid<int>(bw, bh)};
  for (int by = 0; by < bh; ++by)
    for (int bx = 0; bx < bw; ++bx) {
      if (!valid_blocks.at(by, bx)) continue;
      bands.ll.at(by, bx) = dequantize(d.ll.at(by, bx), d.mu);
      bands.lh.at(by, bx) = dequantize(d.lh.at(by, bx), d.mu);
      bands.hl.at(by, bx) = dequantize(d.hl.at(by, bx), d.mu);
      bands.hh.at(by, bx) = dequantize(d.hh.at(by, bx), d.mu);
    }
  Grid<int> y_rec = inverse_haar(bands);

  HalfReconstruction out;
  out.valid = Grid<std::uint8_t>(bw * 2, bh * 2, 0);
  Plane y_plane(bw * 2, bh * 2);
  for (int y = 0; y < bh * 2; ++y)
    for (int x = 0; x < bw * 2; ++x) {
      y_plane.at(y, x) = clamp_u8(y_rec.at(y, x));
      out.valid.at(y, x) = valid_blocks.at(y / 2, x / 2);
    }

  if (!d.color()) {
    out.image.planes = {std::move(y_plane)};
    return out;
  }

  // Chroma: restore the dropped LSB as zero, fill invalid cells from valid
  // neighbors, then upscale to half resolution.
  Grid<double> uval(bw, bh), vval(bw, bh);
  Grid<std::uint8_t> cvalid(bw, bh);
  for (int by = 0; by < bh; ++by)
    for (int bx = 0; bx < bw; ++bx) {
      uval.at(by, bx) = d.u.at(by, bx) << 1;
      vval.at(by, bx) = d.v.at(by, bx) << 1;
      cvalid.at(by, bx) = valid_blocks.at(by, bx);
    }
  Grid<std::uint8_t> cvalid_v = cvalid;
  neighbor_fill(uval, cvalid);
  neighbor_fill(vval, cvalid_v);
  Plane u_small(bw, bh), v_small(bw, bh);
  for (std::size_t i = 0; i < uval.size(); ++i) {
    u_small.samples[i] = cvalid.data[i] ? clamp_u8(std::round(uval.data[i])) : 128;
    v_small.samples[i] = cvalid_v.data[i] ? clamp_u8(std::round(vval.data[i])) : 128;
  }
  YuvImage yuv;
  yuv.y = std::move(y_plane);
  yuv.u = resize(u_small, 2.0);
  yuv.v = resize(v_small, 2.0);
  out.image = yuv_to_rgb(yuv);
  return out;
}

}  // namespace trlg
