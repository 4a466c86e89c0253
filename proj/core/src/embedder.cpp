#include "trlg/embedder.hpp"

#include <cmath>

#include "trlg/bits.hpp"
#include "trlg/detmath.hpp"
#include "trlg/parallel.hpp"
#include "trlg/scramble.hpp"

namespace trlg {

namespace {

constexpr double kHalfPi = 1.57079632679489655800e+00;  // atan(inf) of the det kernel

std::uint8_t mod256_byte(std::int64_t v) {
  return static_cast<std::uint8_t>(((v % 256) + 256) % 256);
}

std::uint8_t hash_byte(double val) {
  return mod256_byte(static_cast<std::int64_t>(std::floor(val * 1e14)));
}

std::uint8_t relation_byte(int num, int den) {
  if (den == 0) {
    if (num == 0) return 0;  // atan(0/0) := 0
    return hash_byte(num > 0 ? kHalfPi : -kHalfPi);
  }
  return hash_byte(detmath::atan(static_cast<double>(num) / static_cast<double>(den)));
}

}  // namespace

CandidateMap make_candidate_map(int half_w, int half_h, const CcsKey& key3, const CcsKey& key4,
                                bool color) {
  std::size_t n = static_cast<std::size_t>(half_w) * half_h;
  auto pix = derive_integers(ccs_sequence(key3, n), 4, 0);
  CandidateMap cand;
  cand.pixel = Grid<std::uint8_t>(half_w, half_h);
  cand.plane = Grid<std::uint8_t>(half_w, half_h, 0);
  for (std::size_t i = 0; i < n; ++i) cand.pixel.data[i] = static_cast<std::uint8_t>(pix[i]);
  if (color) {
    auto pl = derive_integers(ccs_sequence(key4, n), 3, 0);
    for (std::size_t i = 0; i < n; ++i) cand.plane.data[i] = static_cast<std::uint8_t>(pl[i]);
  }
  return cand;
}

ContentHash content_hash(const RgbImage& img, const CandidateMap& cand) {
  int half_w = img.width() / 2, half_h = img.height() / 2;
  if (cand.pixel.width != half_w || cand.pixel.height != half_h)
    throw image_error("content_hash: candidate map does not match image");

  // keyed candidate samples, high six bits only
  Grid<int> hc(half_w, half_h);
  for (int i = 0; i < half_h; ++i)
    for (int j = 0; j < half_w; ++j) {
      int c = cand.pixel.at(i, j);
      const Plane& p = img.planes[cand.plane.at(i, j)];
      hc.at(i, j) = p.at(2 * i + c / 2, 2 * j + c % 2) & 252;
    }

  int bw = half_w / 2, bh = half_h / 2;
  ContentHash hash{Grid<std::uint8_t>(bw, bh), Grid<std::uint8_t>(bw, bh),
                   Grid<std::uint8_t>(bw, bh), Grid<std::uint8_t>(bw, bh)};
  for (int by = 0; by < bh; ++by)
    for (int bx = 0; bx < bw; ++bx) {
      int h1 = hc.at(2 * by, 2 * bx), h2 = hc.at(2 * by, 2 * bx + 1);
      int h3 = hc.at(2 * by + 1, 2 * bx), h4 = hc.at(2 * by + 1, 2 * bx + 1);
      hash.r1.at(by, bx) = relation_byte(h1 - h4, h2 - h3);
      hash.r2.at(by, bx) = relation_byte(h1 - h3, h2 - h4);
      hash.r3.at(by, bx) = relation_byte(h1 - h2, h3 - h4);
      // Orthonormal 2x2 DCT DC = sum/2 (an exact small integer). The product
      // with 1e14 is taken in binary64 on purpose: dc*1e14 exceeds 2^53 for
      // dc >= 91, and the deterministic rounding there is what makes the byte
      // depend on the block's brightness rather than cancel mod 256.
      double dc = static_cast<double>(h1 + h2 + h3 + h4) * 0.5;
      hash.r4.at(by, bx) = hash_byte(dc);
    }
  return hash;
}

namespace {

// phi chunk widths per plane: 5 bits in plane 0, 6 in planes 1 and 2
int phi_chunk_bits(int plane) { return plane == 0 ? 5 : 6; }

std::vector<std::uint8_t> packed_block_pair(const PrimaryDigest& p1, const PrimaryDigest& p2,
                                            bool color, int by, int bx) {
  std::vector<std::uint8_t> bits = pack_primary_block(p1, by, bx);
  if (color) {
    std::vector<std::uint8_t> second = pack_primary_block(p2, by, bx);
    bits.insert(bits.end(), second.begin(), second.end());
  }
  return bits;
}

}  // namespace

WatermarkWords assemble_watermark(const PrimaryDigest& primary1, const PrimaryDigest& primary2,
                                  const SecondaryDigest& sec1, const SecondaryDigest& sec2) {
  bool color = primary1.color();
  int planes = color ? 3 : 1;
  int bw = primary1.blocks_w(), bh = primary1.blocks_h();
  int half_w = bw * 2, half_h = bh * 2;
  if (static_cast<int>(sec1.planes.size()) != planes || static_cast<int>(sec2.planes.size()) != planes)
    throw image_error("assemble_watermark: secondary plane count mismatch");

  WatermarkWords words;
  words.planes.assign(static_cast<std::size_t>(planes), Grid<std::uint8_t>(half_w, half_h));

  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      std::vector<std::uint8_t> dbar = packed_block_pair(primary1, primary2, color, by, bx);
      // plane k owns dbar[20..43] (k=1) and dbar[44..67] (k=2); plane 0 owns [0..19]
      for (int n = 0; n < 4; ++n) {
        int i = 2 * by + n / 2, j = 2 * bx + n % 2;
        std::vector<std::uint8_t> phi;
        int base = 0;
        for (int k = 0; k < planes; ++k) {
          int cb = phi_chunk_bits(k);
          for (int b = 0; b < cb; ++b) phi.push_back(dbar[static_cast<std::size_t>(base + cb * n + b)]);
          base += 4 * cb;
        }
        std::vector<std::uint8_t> s1_bits, s2_bits;
        for (int k = 0; k < planes; ++k) {
          s1_bits.push_back(sec1.planes[static_cast<std::size_t>(k)].at(i, j));
          s2_bits.push_back(sec2.planes[static_cast<std::size_t>(k)].at(i, j));
        }
        std::uint8_t auth = compute_auth_bit(phi, s1_bits, s2_bits);

        int off = 0;
        for (int k = 0; k < planes; ++k) {
          int cb = phi_chunk_bits(k);
          std::uint32_t w = 0;
          for (int b = 0; b < cb; ++b) w = (w << 1) | phi[static_cast<std::size_t>(off + b)];
          off += cb;
          w = (w << 1) | s1_bits[static_cast<std::size_t>(k)];
          w = (w << 1) | s2_bits[static_cast<std::size_t>(k)];
          if (k == 0) w = (w << 1) | auth;
          words.planes[static_cast<std::size_t>(k)].at(i, j) = static_cast<std::uint8_t>(w);
        }
      }
    }
  }
  return words;
}

DisassembledWatermark disassemble_watermark(const WatermarkWords& words, int mu) {
  bool color = words.color();
  int planes = color ? 3 : 1;
  int half_w = words.width(), half_h = words.height();
  int bw = half_w / 2, bh = half_h / 2;

  DisassembledWatermark out;
  out.has_second_primary = color;
  auto init_digest = [&](PrimaryDigest& d) {
    d.mu = mu;
    d.gamma = Grid<std::uint8_t>(bw, bh);
    d.ll = Grid<std::int16_t>(bw, bh);
    d.lh = Grid<std::int16_t>(bw, bh);
    d.hl = Grid<std::int16_t>(bw, bh);
    d.hh = Grid<std::int16_t>(bw, bh);
    if (color) {
      d.u = Grid<std::uint8_t>(bw, bh);
      d.v = Grid<std::uint8_t>(bw, bh);
    }
  };
  init_digest(out.primary1);
  if (color) init_digest(out.primary2);
  out.sec1.planes.assign(static_cast<std::size_t>(planes), BinaryPlane(half_w, half_h));
  out.sec2.planes.assign(static_cast<std::size_t>(planes), BinaryPlane(half_w, half_h));
  out.extracted_auth = AuthGrid(half_w, half_h);
  out.computed_auth = AuthGrid(half_w, half_h);

  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      std::vector<std::uint8_t> dbar(static_cast<std::size_t>(color ? 68 : 20));
      for (int n = 0; n < 4; ++n) {
        int i = 2 * by + n / 2, j = 2 * bx + n % 2;
        std::vector<std::uint8_t> phi;
        int base = 0;
        std::vector<std::uint8_t> s1_bits, s2_bits;
        for (int k = 0; k < planes; ++k) {
          std::uint8_t w = words.planes[static_cast<std::size_t>(k)].at(i, j);
          int cb = phi_chunk_bits(k);
          int tail = k == 0 ? 3 : 2;  // sec1, sec2 (+auth in plane 0)
          for (int b = 0; b < cb; ++b) {
            std::uint8_t bit = (w >> (cb + tail - 1 - b)) & 1u;
            dbar[static_cast<std::size_t>(base + cb * n + b)] = bit;
            phi.push_back(bit);
          }
          base += 4 * cb;
          std::uint8_t s1 = (w >> (tail - 1)) & 1u;
          std::uint8_t s2 = (w >> (tail - 2)) & 1u;
          out.sec1.planes[static_cast<std::size_t>(k)].at(i, j) = s1;
          out.sec2.planes[static_cast<std::size_t>(k)].at(i, j) = s2;
          s1_bits.push_back(s1);
          s2_bits.push_back(s2);
          if (k == 0) out.extracted_auth.at(i, j) = w & 1u;
        }
        out.computed_auth.at(i, j) = compute_auth_bit(phi, s1_bits, s2_bits);
      }
      std::vector<std::uint8_t> first(dbar.begin(), dbar.begin() + (color ? 34 : 20));
      unpack_primary_block(first, color, out.primary1, by, bx);
      if (color) {
        std::vector<std::uint8_t> second(dbar.begin() + 34, dbar.end());
        unpack_primary_block(second, color, out.primary2, by, bx);
      }
    }
  }
  return out;
}

WatermarkWords bind_to_content(const WatermarkWords& words, const ContentHash& hash) {
  WatermarkWords out = words;
  for (auto& plane : out.planes)
    for (int i = 0; i < plane.height; ++i)
      for (int j = 0; j < plane.width; ++j) {
        std::uint8_t r = static_cast<std::uint8_t>(hash.r1.at(i / 2, j / 2) ^ hash.r2.at(i / 2, j / 2) ^
                                                   hash.r3.at(i / 2, j / 2) ^ hash.r4.at(i / 2, j / 2));
        plane.at(i, j) ^= r;
      }
  return out;
}

namespace {

struct PermuteTables {
  // rotated simple-mapping bit permutations, one per s'' value 1..8
  std::array<std::array<std::uint8_t, 8>, 8> fwd;

  PermuteTables() {
    std::vector<std::uint32_t> base = simple_mapping(13, 8);
    for (int p = 0; p < 8; ++p)
      for (int i = 0; i < 8; ++i)
        fwd[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(base[static_cast<std::size_t>((i + p) % 8)]);
  }
};

const PermuteTables& permute_tables() {
  static const PermuteTables t;
  return t;
}

std::uint8_t permute_bits(std::uint8_t v, int s, bool inverse) {
  const auto& perm = permute_tables().fwd[static_cast<std::size_t>(s - 1)];
  std::uint8_t out = 0;
  for (int i = 0; i < 8; ++i) {
    if (inverse) {
      std::uint8_t bit = (v >> (7 - i)) & 1u;
      out |= static_cast<std::uint8_t>(bit << (7 - perm[static_cast<std::size_t>(i)]));
    } else {
      std::uint8_t bit = (v >> (7 - perm[static_cast<std::size_t>(i)])) & 1u;
      out |= static_cast<std::uint8_t>(bit << (7 - i));
    }
  }
  return out;
}

struct KeyStreams {
  std::vector<std::uint32_t> xor_bytes;  // mod 256
  std::vector<std::uint32_t> rotations;  // in [1, 8]
};

KeyStreams make_streams(int half_w, int half_h, const CcsKey& key5, const CcsKey& key6) {
  std::size_t n = static_cast<std::size_t>(half_w) * half_h;
  return {derive_integers(ccs_sequence(key5, n), 256, 0),
          derive_integers(ccs_sequence(key6, n), 8, 1)};
}

}  // namespace

WatermarkWords encrypt_permute(const WatermarkWords& words, const CcsKey& key5, const CcsKey& key6) {
  KeyStreams ks = make_streams(words.width(), words.height(), key5, key6);
  WatermarkWords out = words;
  for (auto& plane : out.planes)
    for (std::size_t i = 0; i < plane.size(); ++i) {
      std::uint8_t v = plane.data[i] ^ static_cast<std::uint8_t>(ks.xor_bytes[i]);
      plane.data[i] = permute_bits(v, static_cast<int>(ks.rotations[i]), false);
    }
  return out;
}

WatermarkWords decrypt_depermute(const WatermarkWords& words, const CcsKey& key5, const CcsKey& key6) {
  KeyStreams ks = make_streams(words.width(), words.height(), key5, key6);
  WatermarkWords out = words;
  for (auto& plane : out.planes)
    for (std::size_t i = 0; i < plane.size(); ++i) {
      std::uint8_t v = permute_bits(plane.data[i], static_cast<int>(ks.rotations[i]), true);
      plane.data[i] = v ^ static_cast<std::uint8_t>(ks.xor_bytes[i]);
    }
  return out;
}

WatermarkWords apply_key7(const WatermarkWords& words, std::uint32_t key7, int planes) {
  if (static_cast<int>(words.planes.size()) != planes)
    throw image_error("apply_key7: plane count mismatch");
  WatermarkWords out = words;
  for (int k = 0; k < planes; ++k) {
    std::uint8_t b = static_cast<std::uint8_t>(key7 >> (8 * k));
    for (auto& v : out.planes[static_cast<std::size_t>(k)].data) v ^= b;
  }
  return out;
}

namespace {

// 4 * sum(x^2) - (sum x)^2, proportional to the block variance
inline long block_var4(const std::array<std::uint8_t, 4>& s) {
  long sum = 0, sq = 0;
  for (int v : s) {
    sum += v;
    sq += static_cast<long>(v) * v;
  }
  return 4 * sq - sum * sum;
}

}  // namespace

std::array<std::uint8_t, 4> lsb_match_embed(const std::array<std::uint8_t, 4>& samples,
                                            std::uint8_t word, int candidate) {
  long initial = block_var4(samples);
  std::array<std::uint8_t, 4> out = samples;
  for (int i = 0; i < 4; ++i) {
    int target = (word >> (2 * i)) & 3;
    if (i == candidate) {
      out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((samples[static_cast<std::size_t>(i)] & ~3) | target);
      continue;
    }
    int f = initial < block_var4(out) ? -1 : 1;
    int base = samples[static_cast<std::size_t>(i)];
    bool done = false;
    // smallest offset wins; the variance-guided sign f only orders the
    // +-j candidates of equal magnitude
    for (int j = 0; j < 4 && !done; ++j) {
      for (int xi : {j * f, -j * f}) {
        if ((((base & 3) + xi) % 4 + 4) % 4 != target) continue;
        int v = base + xi;
        if (v < 0 || v > 255) continue;
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        done = true;
        break;
      }
    }
    if (!done)  // unreachable for 8-bit samples, kept as a guard
      out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((base & ~3) | target);
  }
  return out;
}

void lsb_match_cost_row(const std::array<std::uint8_t, 4>& samples, std::uint8_t word,
                        int candidate, std::array<std::uint64_t, 256>& acc) {
  std::array<std::uint32_t, 256> cost_by_word;
  for (int w = 0; w < 256; ++w) {
    std::array<std::uint8_t, 4> out = lsb_match_embed(samples, static_cast<std::uint8_t>(w), candidate);
    std::uint32_t c = 0;
    for (int i = 0; i < 4; ++i) {
      int d = static_cast<int>(out[static_cast<std::size_t>(i)]) - static_cast<int>(samples[static_cast<std::size_t>(i)]);
      c += static_cast<std::uint32_t>(d * d);
    }
    cost_by_word[static_cast<std::size_t>(w)] = c;
  }
  for (int b = 0; b < 256; ++b) acc[static_cast<std::size_t>(b)] += cost_by_word[word ^ b];
}

RgbImage embed_words(const RgbImage& img, const WatermarkWords& words, const CandidateMap& cand) {
  if (static_cast<int>(img.planes.size()) != static_cast<int>(words.planes.size()))
    throw image_error("embed_words: plane count mismatch");
  RgbImage out = img;
  int half_w = words.width(), half_h = words.height();
  for (int k = 0; k < static_cast<int>(out.planes.size()); ++k) {
    Plane& p = out.planes[static_cast<std::size_t>(k)];
    const Grid<std::uint8_t>& wp = words.planes[static_cast<std::size_t>(k)];
    for (int i = 0; i < half_h; ++i)
      for (int j = 0; j < half_w; ++j) {
        std::array<std::uint8_t, 4> s{p.at(2 * i, 2 * j), p.at(2 * i, 2 * j + 1),
                                      p.at(2 * i + 1, 2 * j), p.at(2 * i + 1, 2 * j + 1)};
        int candidate = cand.plane.at(i, j) == k ? cand.pixel.at(i, j) : -1;
        std::array<std::uint8_t, 4> e = lsb_match_embed(s, wp.at(i, j), candidate);
        p.at(2 * i, 2 * j) = e[0];
        p.at(2 * i, 2 * j + 1) = e[1];
        p.at(2 * i + 1, 2 * j) = e[2];
        p.at(2 * i + 1, 2 * j + 1) = e[3];
      }
  }
  return out;
}

WatermarkWords extract_words(const RgbImage& img) {
  WatermarkWords words;
  int half_w = img.width() / 2, half_h = img.height() / 2;
  for (const Plane& p : img.planes) {
    Grid<std::uint8_t> wp(half_w, half_h);
    for (int i = 0; i < half_h; ++i)
      for (int j = 0; j < half_w; ++j) {
        std::uint8_t w = static_cast<std::uint8_t>((p.at(2 * i, 2 * j) & 3) |
                                                   ((p.at(2 * i, 2 * j + 1) & 3) << 2) |
                                                   ((p.at(2 * i + 1, 2 * j) & 3) << 4) |
                                                   ((p.at(2 * i + 1, 2 * j + 1) & 3) << 6));
        wp.at(i, j) = w;
      }
    words.planes.push_back(std::move(wp));
  }
  return words;
}

EmbedResult embed(const RgbImage& host, const KeyChain& keys, const EmbedOptions& opt) {
  if (host.planes.empty()) throw image_error("embed: empty host");
  if (host.width() % 4 != 0 || host.height() % 4 != 0)
    throw image_error("embed: host dimensions must be divisible by 4 (pad first)");
  bool color = host.color();
  int planes = color ? 3 : 1;
  int half_w = host.width() / 2, half_h = host.height() / 2;

  EmbedResult res;
  res.keys = keys;

  YuvImage yuv = rgb_to_yuv(host);
  res.thresholds = optimize_thresholds(yuv.y, opt.thresholds_ga, opt.mu, &res.thresholds_trace);
  Grid<double> thr = tile_thresholds(res.thresholds, host.width() / 4, host.height() / 4);
  PrimaryDigest primary = generate_primary(yuv, thr, opt.mu);

  PrimaryDigest p1 = reorder_digest(shuffle_digest(primary, keys.key1),
                                    shift_aside_map(primary.blocks_w(), primary.blocks_h()), false);
  PrimaryDigest p2;
  if (color)
    p2 = reorder_digest(shuffle_digest(primary, keys.key2),
                        mirror_aside_map(primary.blocks_w(), primary.blocks_h()), false);

  SecondaryDigest sec = generate_secondary(host);
  SecondaryDigest s1, s2;
  for (const BinaryPlane& p : sec.planes) {
    s1.planes.push_back(partner_block_1(p));
    s2.planes.push_back(partner_block_2(p));
  }

  WatermarkWords words = assemble_watermark(p1, p2, s1, s2);
  CandidateMap cand = make_candidate_map(half_w, half_h, keys.key3, keys.key4, color);
  ContentHash hash = content_hash(host, cand);
  WatermarkWords encrypted = encrypt_permute(bind_to_content(words, hash), keys.key5, keys.key6);

  // Per-plane key7 cost tables: row-parallel accumulation merged in plane order.
  std::vector<std::array<std::uint64_t, 256>> plane_costs(static_cast<std::size_t>(planes));
  for (int k = 0; k < planes; ++k) {
    std::vector<std::array<std::uint64_t, 256>> rows(static_cast<std::size_t>(half_h));
    const Plane& p = host.planes[static_cast<std::size_t>(k)];
    const Grid<std::uint8_t>& wp = encrypted.planes[static_cast<std::size_t>(k)];
    parallel_for(static_cast<std::size_t>(half_h), [&](std::size_t i) {
      auto& acc = rows[i];
      acc.fill(0);
      for (int j = 0; j < half_w; ++j) {
        std::array<std::uint8_t, 4> s{p.at(2 * static_cast<int>(i), 2 * j),
                                      p.at(2 * static_cast<int>(i), 2 * j + 1),
                                      p.at(2 * static_cast<int>(i) + 1, 2 * j),
                                      p.at(2 * static_cast<int>(i) + 1, 2 * j + 1)};
        int candidate = cand.plane.at(static_cast<int>(i), j) == k ? cand.pixel.at(static_cast<int>(i), j) : -1;
        lsb_match_cost_row(s, wp.at(static_cast<int>(i), j), candidate, acc);
      }
    });
    auto& total = plane_costs[static_cast<std::size_t>(k)];
    total.fill(0);
    for (const auto& acc : rows)
      for (int b = 0; b < 256; ++b) total[static_cast<std::size_t>(b)] += acc[static_cast<std::size_t>(b)];
  }
  std::uint64_t sample_count = static_cast<std::uint64_t>(host.width()) * host.height() * planes;
  std::uint32_t key7 = optimize_key7(plane_costs, sample_count, opt.key7_ga, &res.key7_trace);
  res.keys.key7 = key7;
  res.keys.key7_planes = planes;

  WatermarkWords final_words = apply_key7(encrypted, key7, planes);
  res.watermarked = embed_words(host, final_words, cand);
  res.quality = quality_report(host, res.watermarked);
  return res;
}

}  // namespace trlg
