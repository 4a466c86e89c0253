#include <doctest.h>

#include <cmath>

#include "support/synth.hpp"
#include "trlg/embedder.hpp"
#include "trlg/metrics.hpp"
#include "trlg/parallel.hpp"
#include "trlg/recovery.hpp"
#include "trlg/scramble.hpp"

using namespace trlg;

namespace {

EmbedOptions fast_options() {
  EmbedOptions opt;
  opt.thresholds_ga.population = 8;
  opt.thresholds_ga.generations = 6;
  opt.thresholds_ga.rng_seed = 101;
  opt.key7_ga.population = 16;
  opt.key7_ga.generations = 12;
  opt.key7_ga.rng_seed = 202;
  return opt;
}

}  // namespace

TEST_CASE("embed: payload exactness, perturbation bound, hash stability") {
  for (bool color : {false, true}) {
    RgbImage host = testsupport::cloud_image(128, 128, color ? 61u : 62u, color);
    KeyChain keys = generate_keychain(0xabba);
    EmbedResult res = embed(host, keys, fast_options());

    CHECK(res.keys.key7_planes == (color ? 3 : 1));

    // max |watermarked - host| <= 3 everywhere
    int max_dev = 0;
    for (std::size_t k = 0; k < host.planes.size(); ++k)
      for (std::size_t i = 0; i < host.planes[k].size(); ++i)
        max_dev = std::max(max_dev, std::abs(static_cast<int>(res.watermarked.planes[k].samples[i]) -
                                             static_cast<int>(host.planes[k].samples[i])));
    CHECK(max_dev <= 3);
    CHECK(res.quality.psnr >= 10.0 * std::log10(255.0 * 255.0 / 9.0));

    // content hash unchanged by embedding
    CandidateMap cand = make_candidate_map(host.width() / 2, host.height() / 2, keys.key3,
                                           keys.key4, color);
    ContentHash before = content_hash(host, cand);
    ContentHash after = content_hash(res.watermarked, cand);
    CHECK(before.r1 == after.r1);
    CHECK(before.r2 == after.r2);
    CHECK(before.r3 == after.r3);
    CHECK(before.r4 == after.r4);

    // extraction undoes the whole encryption chain bit for bit
    WatermarkWords psi = extract_watermark(res.watermarked, res.keys);
    DisassembledWatermark parts = disassemble_watermark(psi);
    CHECK(parts.extracted_auth == parts.computed_auth);
  }
}

TEST_CASE("watermarked quality sits in the expected band on film-like content") {
  RgbImage host = load_image(testsupport::data_path("lena_class_gray.pgm"));
  KeyChain keys = generate_keychain(0xcafe);
  EmbedResult res = embed(host, keys, fast_options());
  // 2 bits per sample with the offset-minimizing matcher: mid-45s dB
  CHECK(res.quality.psnr >= 45.0);
  CHECK(res.quality.psnr <= 47.5);
  CHECK(res.quality.ssim >= 0.985);
}

TEST_CASE("embedding is deterministic across runs and thread counts") {
  RgbImage host = testsupport::cloud_image(128, 128, 63, true);
  KeyChain keys = generate_keychain(0xdead);
  EmbedOptions opt = fast_options();

  set_thread_count(1);
  EmbedResult a = embed(host, keys, opt);
  EmbedResult b = embed(host, keys, opt);
  CHECK(a.watermarked == b.watermarked);
  CHECK(a.keys.key7 == b.keys.key7);

  set_thread_count(4);
  EmbedResult c = embed(host, keys, opt);
  CHECK(a.watermarked == c.watermarked);
  CHECK(a.keys.key7 == c.keys.key7);
  set_thread_count(1);
}

TEST_CASE("encryption statistics of the permuted stream") {
  RgbImage host = load_image(testsupport::data_path("portrait_gray.pgm"));
  KeyChain keys = generate_keychain(0xbead);

  YuvImage yuv = rgb_to_yuv(host);
  Grid<double> thr_tiles(host.width() / 128, host.height() / 128, 8.0);
  Grid<double> thr = tile_thresholds(thr_tiles, host.width() / 4, host.height() / 4);
  PrimaryDigest prim = generate_primary(yuv, thr);
  PrimaryDigest p1 = reorder_digest(shuffle_digest(prim, keys.key1),
                                    shift_aside_map(prim.blocks_w(), prim.blocks_h()), false);
  SecondaryDigest sec = generate_secondary(host);
  SecondaryDigest s1, s2;
  for (const auto& p : sec.planes) {
    s1.planes.push_back(partner_block_1(p));
    s2.planes.push_back(partner_block_2(p));
  }
  WatermarkWords psi = assemble_watermark(p1, p1, s1, s2);
  CandidateMap cand = make_candidate_map(host.width() / 2, host.height() / 2, keys.key3, keys.key4, false);
  WatermarkWords bound = bind_to_content(psi, content_hash(host, cand));
  WatermarkWords enc = encrypt_permute(bound, keys.key5, keys.key6);

  // entropy of the encrypted stream itself; NPCR/UACI compare the ciphertexts
  // of the same payload under infinitesimally different keys
  KeyChain tweaked = keys;
  tweaked.key5.x0 += 1e-10;
  WatermarkWords enc2 = encrypt_permute(bound, tweaked.key5, keys.key6);
  std::vector<std::uint8_t> variant_a(enc.planes[0].data.begin(), enc.planes[0].data.end());
  std::vector<std::uint8_t> variant_b(enc2.planes[0].data.begin(), enc2.planes[0].data.end());
  SecurityReport rep = security_metrics(variant_a, variant_b);
  CHECK(rep.entropy >= 7.99);
  CHECK(rep.npcr >= 0.99);
  CHECK(rep.uaci >= 0.31);
  CHECK(rep.uaci <= 0.36);
}

TEST_CASE("avalanche between assembled and fully encrypted words") {
  RgbImage host = testsupport::cloud_image(256, 256, 64, false);
  KeyChain keys = generate_keychain(0xfade);
  EmbedResult res = embed(host, keys, fast_options());

  // reconstruct psi''' by re-reading the stego image, compare to plain psi
  WatermarkWords psi3 = extract_words(res.watermarked);
  WatermarkWords psi = extract_watermark(res.watermarked, res.keys);
  std::vector<std::uint8_t> a(psi.planes[0].data.begin(), psi.planes[0].data.end());
  std::vector<std::uint8_t> b(psi3.planes[0].data.begin(), psi3.planes[0].data.end());
  SecurityReport rep = security_metrics(a, b);
  CHECK(rep.npcr >= 0.99);
  // the plain words are biased, so |a-b| runs above the uniform-pair value;
  // the Table-3-style UACI band is asserted on ciphertext pairs above
  CHECK(rep.uaci >= 0.31);
  CHECK(rep.uaci <= 0.40);
}

TEST_CASE("scrambling actually disperses digest content") {
  // two different keys yield different shuffles nearly everywhere
  RgbImage host = testsupport::cloud_image(128, 128, 65, false);
  YuvImage yuv = rgb_to_yuv(host);
  Grid<double> thr(32, 32, 8.0);
  PrimaryDigest prim = generate_primary(yuv, thr);
  KeyChain keys = generate_keychain(0xfeed);
  PrimaryDigest s_a = shuffle_digest(prim, keys.key1);
  PrimaryDigest s_b = shuffle_digest(prim, keys.key2);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < prim.ll.size(); ++i)
    if (s_a.ll.data[i] != s_b.ll.data[i] || s_a.gamma.data[i] != s_b.gamma.data[i]) ++diff;
  CHECK(diff > prim.ll.size() / 2);
}
