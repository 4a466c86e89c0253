#include "trlg/recovery.hpp"

#include <cmath>

#include "trlg/scramble.hpp"

namespace trlg {

WatermarkWords extract_watermark(const RgbImage& img, const KeyChain& keys, int mu) {
  (void)mu;
  bool color = img.color();
  int planes = color ? 3 : 1;
  if (keys.key7_planes != planes)
    throw key_error("extract: key7 plane count does not match the image");
  WatermarkWords psi3 = extract_words(img);
  WatermarkWords psi2 = apply_key7(psi3, keys.key7, planes);
  WatermarkWords psi1 = decrypt_depermute(psi2, keys.key5, keys.key6);
  CandidateMap cand = make_candidate_map(psi1.width(), psi1.height(), keys.key3, keys.key4, color);
  ContentHash hash = content_hash(img, cand);
  return bind_to_content(psi1, hash);  // unbind: the binding is an involution
}

TamperMap close_tamper_map(const TamperMap& raw) {
  // closing with a 5x5 square: dilate radius 2, then erode radius 2
  int w = raw.width, h = raw.height;
  TamperMap dil(w, h, 0), out(w, h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = 0;
      for (int dy = -2; dy <= 2 && !v; ++dy)
        for (int dx = -2; dx <= 2 && !v; ++dx) {
          int yy = y + dy, xx = x + dx;
          if (yy >= 0 && yy < h && xx >= 0 && xx < w && raw.at(yy, xx)) v = 1;
        }
      dil.at(y, x) = v;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = 1;
      for (int dy = -2; dy <= 2 && v; ++dy)
        for (int dx = -2; dx <= 2 && v; ++dx) {
          int yy = y + dy, xx = x + dx;
          // cells outside the image count as set, so edges are not eroded away
          if (yy >= 0 && yy < h && xx >= 0 && xx < w && !dil.at(yy, xx)) v = 0;
        }
      out.at(y, x) = v;
    }
  return out;
}

TamperMap authenticate(const RgbImage& img, const KeyChain& keys) {
  WatermarkWords psi = extract_watermark(img, keys);
  DisassembledWatermark parts = disassemble_watermark(psi);
  TamperMap raw(psi.width(), psi.height());
  for (std::size_t i = 0; i < raw.size(); ++i)
    raw.data[i] = parts.extracted_auth.data[i] == parts.computed_auth.data[i] ? 0 : 1;
  return close_tamper_map(raw);
}

namespace {

// carrier 4x4 block is intact only if all four of its 2x2 blocks are clean
Grid<std::uint8_t> carrier_block_validity(const TamperMap& tamper) {
  Grid<std::uint8_t> out(tamper.width / 2, tamper.height / 2);
  for (int by = 0; by < out.height; ++by)
    for (int bx = 0; bx < out.width; ++bx)
      out.at(by, bx) = !(tamper.at(2 * by, 2 * bx) || tamper.at(2 * by, 2 * bx + 1) ||
                         tamper.at(2 * by + 1, 2 * bx) || tamper.at(2 * by + 1, 2 * bx + 1));
  return out;
}

void merge_field(Grid<std::int16_t>& dst, const Grid<std::int16_t>& a, const Grid<std::int16_t>& b,
                 const Grid<std::uint8_t>& use_first, const Grid<std::uint8_t>& valid) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst.data[i] = valid.data[i] ? (use_first.data[i] ? a.data[i] : b.data[i]) : 0;
}

}  // namespace

ReconstructedDigests reconstruct_digests(const WatermarkWords& psi, const TamperMap& tamper,
                                         const KeyChain& keys, int mu) {
  DisassembledWatermark parts = disassemble_watermark(psi, mu);
  bool color = parts.has_second_primary;
  int bw = parts.primary1.blocks_w(), bh = parts.primary1.blocks_h();

  Grid<std::uint8_t> carrier_ok = carrier_block_validity(tamper);

  // Copy 1 rode shuffle(key1) followed by shift-aside; undo in reverse.
  auto shift_map = shift_aside_map(bw, bh);
  PrimaryDigest p1 = unshuffle_digest(reorder_digest(parts.primary1, shift_map, true), keys.key1);
  Grid<std::uint8_t> p1_valid = invert_position_map(carrier_ok, shift_map);
  {
    auto perm = permutation_from_sequence(ccs_sequence(keys.key1, p1_valid.size()));
    Grid<std::uint8_t> tmp(bw, bh);
    for (std::size_t i = 0; i < p1_valid.size(); ++i) tmp.data[perm[i]] = p1_valid.data[i];
    p1_valid = std::move(tmp);
  }

  PrimaryDigest p2 = p1;
  Grid<std::uint8_t> p2_valid(bw, bh, 0);
  if (color) {
    auto mirror_map = mirror_aside_map(bw, bh);
    p2 = unshuffle_digest(reorder_digest(parts.primary2, mirror_map, true), keys.key2);
    p2_valid = invert_position_map(carrier_ok, mirror_map);
    auto perm = permutation_from_sequence(ccs_sequence(keys.key2, p2_valid.size()));
    Grid<std::uint8_t> tmp(bw, bh);
    for (std::size_t i = 0; i < p2_valid.size(); ++i) tmp.data[perm[i]] = p2_valid.data[i];
    p2_valid = std::move(tmp);
  }

  ReconstructedDigests out;
  out.primary = p1;
  out.primary.mu = mu;
  out.primary_valid = Grid<std::uint8_t>(bw, bh);
  out.primary_source = Grid<std::uint8_t>(bw, bh, 0);
  Grid<std::uint8_t> use_first(bw, bh);
  for (std::size_t i = 0; i < out.primary_valid.size(); ++i) {
    bool v1 = p1_valid.data[i] != 0, v2 = p2_valid.data[i] != 0;
    out.primary_valid.data[i] = v1 || v2;
    use_first.data[i] = v1;  // copy 1 wins when both survive
    out.primary_source.data[i] = v1 ? 1 : (v2 ? 2 : 0);
  }
  auto merge_u8 = [&](Grid<std::uint8_t>& dst, const Grid<std::uint8_t>& a, const Grid<std::uint8_t>& b) {
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst.data[i] = out.primary_valid.data[i] ? (use_first.data[i] ? a.data[i] : b.data[i]) : 0;
  };
  merge_u8(out.primary.gamma, p1.gamma, p2.gamma);
  merge_field(out.primary.ll, p1.ll, p2.ll, use_first, out.primary_valid);
  merge_field(out.primary.lh, p1.lh, p2.lh, use_first, out.primary_valid);
  merge_field(out.primary.hl, p1.hl, p2.hl, use_first, out.primary_valid);
  merge_field(out.primary.hh, p1.hh, p2.hh, use_first, out.primary_valid);
  if (color) {
    merge_u8(out.primary.u, p1.u, p2.u);
    merge_u8(out.primary.v, p1.v, p2.v);
  }

  // Secondary copies: one bit per block position, validity = block cleanliness
  // pushed back through the partner reorderings.
  int half_w = tamper.width, half_h = tamper.height;
  auto pmap1 = partner_block_1_map(half_w, half_h);
  auto pmap2 = partner_block_2_map(half_w, half_h);
  Grid<std::uint8_t> clean(half_w, half_h);
  for (std::size_t i = 0; i < clean.size(); ++i) clean.data[i] = tamper.data[i] ? 0 : 1;
  Grid<std::uint8_t> s1_valid = invert_position_map(clean, pmap1);
  Grid<std::uint8_t> s2_valid = invert_position_map(clean, pmap2);

  out.secondary_valid = Grid<std::uint8_t>(half_w, half_h);
  out.secondary_source = Grid<std::uint8_t>(half_w, half_h, 0);
  for (std::size_t i = 0; i < out.secondary_valid.size(); ++i) {
    bool v1 = s1_valid.data[i] != 0, v2 = s2_valid.data[i] != 0;
    out.secondary_valid.data[i] = v1 || v2;
    out.secondary_source.data[i] = v1 ? 1 : (v2 ? 2 : 0);
  }
  for (std::size_t k = 0; k < parts.sec1.planes.size(); ++k) {
    BinaryPlane a = invert_position_map(parts.sec1.planes[k], pmap1);
    BinaryPlane b = invert_position_map(parts.sec2.planes[k], pmap2);
    BinaryPlane merged(half_w, half_h);
    for (std::size_t i = 0; i < merged.size(); ++i)
      merged.data[i] = s1_valid.data[i] ? a.data[i] : (s2_valid.data[i] ? b.data[i] : 0);
    out.secondary.planes.push_back(std::move(merged));
  }
  return out;
}

namespace {

void fill_plane_holes(Grid<double>& values, Grid<std::uint8_t>& valid) {
  int w = values.width, h = values.height;
  bool any = false;
  for (std::size_t i = 0; i < valid.size(); ++i) any |= valid.data[i] != 0;
  if (!any) return;  // nothing to propagate from; leave unknowns at 0
  for (;;) {
    bool missing = false, progressed = false;
    Grid<double> nv = values;
    Grid<std::uint8_t> nvalid = valid;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (valid.at(y, x)) continue;
        missing = true;
        double sum = 0;
        int cnt = 0;
        auto probe = [&](int yy, int xx) {
          if (yy < 0 || yy >= h || xx < 0 || xx >= w || !valid.at(yy, xx)) return;
          sum += values.at(yy, xx);
          ++cnt;
        };
        probe(y - 1, x);
        probe(y + 1, x);
        probe(y, x - 1);
        probe(y, x + 1);
        if (cnt) {
          nv.at(y, x) = sum / cnt;
          nvalid.at(y, x) = 1;
          progressed = true;
        }
      }
    values = std::move(nv);
    valid = std::move(nvalid);
    if (!missing || !progressed) return;
  }
}

}  // namespace

RecoveryResult recover(const RgbImage& img, const KeyChain& keys, int mu) {
  int W = img.width(), H = img.height();
  int half_w = W / 2, half_h = H / 2;
  int planes = img.color() ? 3 : 1;

  RecoveryResult res;
  res.tamper_map = authenticate(img, keys);
  res.recovery_map = RecoveryMap(half_w, half_h, static_cast<std::uint8_t>(Provenance::untouched));

  bool any_tamper = false;
  for (std::uint8_t v : res.tamper_map.data) any_tamper |= v != 0;
  if (!any_tamper) {
    res.image = img;
    return res;
  }

  WatermarkWords psi = extract_watermark(img, keys);
  ReconstructedDigests dig = reconstruct_digests(psi, res.tamper_map, keys, mu);

  HalfReconstruction prim = reconstruct_primary(dig.primary, dig.primary_valid);

  // Secondary estimate; filter support is restricted to valid halftone bits.
  std::vector<Plane> sec_planes;
  std::vector<Grid<std::uint8_t>> sec_valid;
  for (std::size_t k = 0; k < dig.secondary.planes.size(); ++k) {
    Grid<std::uint8_t> v;
    sec_planes.push_back(inverse_halftone_masked(dig.secondary.planes[k], dig.secondary_valid, &v));
    sec_valid.push_back(std::move(v));
  }

  // Half-resolution composite: received content where clean, digests where
  // tampered, neighbor fill where nothing survived.
  std::vector<Plane> received_half;
  for (const Plane& p : img.planes) received_half.push_back(resize(p, 0.5));

  std::vector<Plane> full_planes;
  for (int k = 0; k < planes; ++k) {
    Grid<double> values(half_w, half_h, 0.0);
    Grid<std::uint8_t> known(half_w, half_h, 0);
    for (int i = 0; i < half_h; ++i)
      for (int j = 0; j < half_w; ++j) {
        if (!res.tamper_map.at(i, j)) {
          values.at(i, j) = received_half[static_cast<std::size_t>(k)].at(i, j);
          known.at(i, j) = 1;
          continue;
        }
        if (prim.valid.at(i, j)) {
          values.at(i, j) = prim.image.planes[static_cast<std::size_t>(k)].at(i, j);
          known.at(i, j) = 1;
          if (k == 0)
            res.recovery_map.at(i, j) = static_cast<std::uint8_t>(
                dig.primary_source.at(i / 2, j / 2) == 1 ? Provenance::primary1 : Provenance::primary2);
          continue;
        }
        if (sec_valid[static_cast<std::size_t>(k)].at(i, j) && dig.secondary_valid.at(i, j)) {
          values.at(i, j) = sec_planes[static_cast<std::size_t>(k)].at(i, j);
          known.at(i, j) = 1;
          if (k == 0)
            res.recovery_map.at(i, j) = static_cast<std::uint8_t>(
                dig.secondary_source.at(i, j) == 1 ? Provenance::secondary1 : Provenance::secondary2);
          continue;
        }
        if (k == 0) res.recovery_map.at(i, j) = static_cast<std::uint8_t>(Provenance::neighbor);
      }
    fill_plane_holes(values, known);
    Plane half(half_w, half_h);
    for (std::size_t i = 0; i < half.size(); ++i)
      half.samples[i] = known.data[i] ? clamp_u8(std::round(values.data[i])) : 128;
    full_planes.push_back(resize(half, 2.0));
  }

  // Final composition: untampered samples pass through untouched.
  res.image = img;
  for (int k = 0; k < planes; ++k) {
    Plane& dst = res.image.planes[static_cast<std::size_t>(k)];
    const Plane& rec = full_planes[static_cast<std::size_t>(k)];
    for (int i = 0; i < half_h; ++i)
      for (int j = 0; j < half_w; ++j) {
        if (!res.tamper_map.at(i, j)) continue;
        for (int dy = 0; dy < 2; ++dy)
          for (int dx = 0; dx < 2; ++dx)
            dst.at(2 * i + dy, 2 * j + dx) = rec.at(2 * i + dy, 2 * j + dx);
      }
  }

  // The provenance map marks only blocks the tamper map flagged.
  for (std::size_t i = 0; i < res.recovery_map.size(); ++i)
    if (!res.tamper_map.data[i]) res.recovery_map.data[i] = static_cast<std::uint8_t>(Provenance::untouched);
  return res;
}

}  // namespace trlg
