#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trlg/auth.hpp"
#include "trlg/chaos.hpp"
#include "trlg/digest.hpp"
#include "trlg/gaopt.hpp"
#include "trlg/image.hpp"
#include "trlg/metrics.hpp"

namespace trlg {

// 8-bit watermark word per 2x2 host block per plane.
// Word layout (bit 7 = MSB):
//   plane 0:   [phi:5 bits 7..3][sec1: bit 2][sec2: bit 1][auth: bit 0]
//   planes 1+: [phi:6 bits 7..2][sec1: bit 1][sec2: bit 0]
// Embedding puts word bits (2n+1, 2n) into the 2 LSBs of block sample n
// (row-major 0..3).
struct WatermarkWords {
  std::vector<Grid<std::uint8_t>> planes;

  bool color() const { return planes.size() == 3; }
  int width() const { return planes.empty() ? 0 : planes[0].width; }
  int height() const { return planes.empty() ? 0 : planes[0].height; }
  bool operator==(const WatermarkWords&) const = default;
};

// Keyed choice of the sample (0..3) and plane (0..2) whose high bits feed the
// content hash; those samples take direct LSB substitution when embedding.
struct CandidateMap {
  Grid<std::uint8_t> pixel;
  Grid<std::uint8_t> plane;
};

// Per 4x4 host block: the four relation bytes of Eq. 17-style content hashing
// (three arctan ratios and the 2x2 DCT DC), each floor(.*1e14) mod 256.
struct ContentHash {
  Grid<std::uint8_t> r1, r2, r3, r4;
};

CandidateMap make_candidate_map(int half_w, int half_h, const CcsKey& key3, const CcsKey& key4,
                                bool color);

ContentHash content_hash(const RgbImage& img, const CandidateMap& cand);

// Fig.-3-style packing of the scrambled digests (plus fresh auth bits) into
// per-plane words. For grayscale hosts primary2 is ignored: the single-plane
// budget carries one primary copy and both secondary copies.
WatermarkWords assemble_watermark(const PrimaryDigest& primary1, const PrimaryDigest& primary2,
                                  const SecondaryDigest& sec1, const SecondaryDigest& sec2);

struct DisassembledWatermark {
  PrimaryDigest primary1, primary2;  // still scrambled/reordered
  SecondaryDigest sec1, sec2;        // still reordered
  AuthGrid extracted_auth;           // auth bit carried in plane 0
  AuthGrid computed_auth;            // recomputed from the carried payload
  bool has_second_primary = false;
};

DisassembledWatermark disassemble_watermark(const WatermarkWords& words, int mu = 2);

// XOR each word with its enclosing 4x4 block's four hash bytes. Involution.
WatermarkWords bind_to_content(const WatermarkWords& words, const ContentHash& hash);

// XOR with the key5 byte stream, then permute the 8 bits by the simple
// mapping rotated by the key6 stream. decrypt_depermute is the exact inverse.
WatermarkWords encrypt_permute(const WatermarkWords& words, const CcsKey& key5, const CcsKey& key6);
WatermarkWords decrypt_depermute(const WatermarkWords& words, const CcsKey& key5, const CcsKey& key6);

// Per-plane byte XOR (involution).
WatermarkWords apply_key7(const WatermarkWords& words, std::uint32_t key7, int planes);

// Modified LSB matching on one 2x2 block (samples row-major). candidate is
// the direct-substitution sample index, or -1. Post: the 2 LSBs of sample n
// equal word bits (2n+1, 2n), and |out - in| <= 3 per sample.
std::array<std::uint8_t, 4> lsb_match_embed(const std::array<std::uint8_t, 4>& samples,
                                            std::uint8_t word, int candidate);

// Squared-error cost of lsb_match_embed for every possible word XOR byte;
// used to build the key7 fitness tables.
void lsb_match_cost_row(const std::array<std::uint8_t, 4>& samples, std::uint8_t word,
                        int candidate, std::array<std::uint64_t, 256>& acc);

// Write every word into the two LSB planes of img.
RgbImage embed_words(const RgbImage& img, const WatermarkWords& words, const CandidateMap& cand);

// Read the two LSB planes back into words.
WatermarkWords extract_words(const RgbImage& img);

struct EmbedOptions {
  GaConfig thresholds_ga;  // fitness: digest SSIM per 128x128 tile
  GaConfig key7_ga;        // fitness: watermarked-image PSNR
  int mu = 2;
};

struct EmbedResult {
  RgbImage watermarked;
  KeyChain keys;              // key7 filled in
  Grid<double> thresholds;    // per-tile GA output
  QualityReport quality;      // vs the host
  std::vector<double> thresholds_trace;
  std::vector<double> key7_trace;
};

// The full embedding pipeline: digests -> scramble -> auth -> assemble ->
// bind -> encrypt/permute -> key7 GA -> LSB matching.
EmbedResult embed(const RgbImage& host, const KeyChain& keys, const EmbedOptions& opt = {});

}  // namespace trlg
