// trlg: fragile quad-watermarking tool.
//   keygen   write a fresh key file
//   embed    watermark a host image (fills key7 into the key file)
//   verify   locate tampered blocks
//   recover  rebuild tampered content from the embedded digests
//   attack   simulate tampering for benchmarks
//   report   quality / security measurements between two inputs

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>

#include "trlg/attacks.hpp"
#include "trlg/chaos.hpp"
#include "trlg/embedder.hpp"
#include "trlg/metrics.hpp"
#include "trlg/parallel.hpp"
#include "trlg/recovery.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitKeyError = 3;
constexpr int kExitInternal = 4;

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

trlg::RgbImage load_host(const std::string& path, bool pad) {
  trlg::RgbImage img = trlg::load_image(path);
  if (img.width() % 4 == 0 && img.height() % 4 == 0) return img;
  if (!pad)
    throw CliError(kExitBadInput, path + ": dimensions must be divisible by 4 (or pass --pad)");
  return trlg::pad_to_multiple(img, 4);
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw CliError(kExitInternal, "cannot write " + path);
  f << body;
}

void write_trace_csv(const std::string& path, const std::vector<double>& trace) {
  std::string body = "generation,best_fitness\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    body += std::to_string(i) + "," + std::to_string(trace[i]) + "\n";
  write_text(path, body);
}

trlg::RgbImage mask_to_image(const trlg::Grid<std::uint8_t>& mask) {
  // block mask rendered at pixel resolution, white = tampered
  trlg::Plane p(mask.width * 2, mask.height * 2);
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) p.at(y, x) = mask.at(y / 2, x / 2) ? 255 : 0;
  trlg::RgbImage img;
  img.planes = {std::move(p)};
  return img;
}

trlg::RgbImage recovery_map_to_image(const trlg::RecoveryMap& map) {
  // red / green: primary copies, blue / white: secondary copies, cyan: neighbors
  static const std::uint8_t palette[6][3] = {
      {0, 0, 0}, {255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 255}, {0, 255, 255}};
  trlg::RgbImage img;
  img.planes.assign(3, trlg::Plane(map.width * 2, map.height * 2));
  for (int y = 0; y < map.height * 2; ++y)
    for (int x = 0; x < map.width * 2; ++x) {
      std::uint8_t code = std::min<std::uint8_t>(map.at(y / 2, x / 2), 5);
      for (int k = 0; k < 3; ++k) img.planes[static_cast<std::size_t>(k)].at(y, x) = palette[code][k];
    }
  return img;
}

std::string quality_csv(const trlg::QualityReport& q) {
  std::string body = "metric,value\n";
  body += "psnr," + std::to_string(q.psnr) + "\n";
  body += "ssim," + std::to_string(q.ssim) + "\n";
  for (std::size_t i = 0; i < q.psnr_per_plane.size(); ++i)
    body += "psnr_plane" + std::to_string(i) + "," + std::to_string(q.psnr_per_plane[i]) + "\n";
  for (std::size_t i = 0; i < q.ssim_per_plane.size(); ++i)
    body += "ssim_plane" + std::to_string(i) + "," + std::to_string(q.ssim_per_plane[i]) + "\n";
  return body;
}

void apply_ga_flags(trlg::GaConfig& cfg, int pop, int gens, double cx, double mut, std::uint64_t seed) {
  if (pop > 0) cfg.population = pop;
  if (gens > 0) cfg.generations = gens;
  if (cx >= 0) cfg.crossover_rate = cx;
  if (mut >= 0) cfg.mutation_rate = mut;
  cfg.rng_seed = seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TRLG fragile quad watermarking: embed, verify, recover"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file; flags given on the command line win");

  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: hardware, env TRLG_THREADS)");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a key file");
  std::string keygen_out = "trlg.keys";
  std::uint64_t keygen_seed = 0;
  bool keygen_seeded = false;
  keygen->add_option("--out", keygen_out, "key file path")->capture_default_str();
  keygen->add_option("--seed", keygen_seed, "RNG seed (omit for OS entropy)")
      ->each([&](const std::string&) { keygen_seeded = true; });

  // shared GA flags
  int ga_pop = 0, ga_gens = 0;
  double ga_cx = -1, ga_mut = -1;
  std::uint64_t ga_seed = 1;

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "embed the watermark into a host image");
  std::string embed_host, embed_keys, embed_out, embed_report;
  bool embed_pad = false;
  embed_cmd->add_option("--host", embed_host, "host image (PNG/PGM/PPM)")->required();
  embed_cmd->add_option("--keys", embed_keys, "key file (key7 is written back)")->required();
  embed_cmd->add_option("--out", embed_out, "watermarked output (lossless)")->required();
  embed_cmd->add_option("--report", embed_report, "quality report CSV path");
  embed_cmd->add_flag("--pad", embed_pad, "pad host to a multiple of 4 before embedding");
  embed_cmd->add_option("--ga-population", ga_pop, "GA population override");
  embed_cmd->add_option("--ga-generations", ga_gens, "GA generations override");
  embed_cmd->add_option("--ga-crossover", ga_cx, "GA crossover rate override");
  embed_cmd->add_option("--ga-mutation", ga_mut, "GA mutation rate override");
  embed_cmd->add_option("--ga-seed", ga_seed, "GA RNG seed")->capture_default_str();
  std::string trace_prefix;
  embed_cmd->add_option("--trace", trace_prefix, "write GA fitness traces to <prefix>_*.csv");
  std::string dump_prefix;
  embed_cmd->add_option("--dump-digests", dump_prefix,
                        "write digest inspection PNGs to <prefix>_*.png");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "locate tampered blocks");
  std::string verify_img, verify_keys, verify_map;
  verify_cmd->add_option("--image", verify_img, "suspect image")->required();
  verify_cmd->add_option("--keys", verify_keys, "key file (with key7)")->required();
  verify_cmd->add_option("--map", verify_map, "tamper map PNG (white = tampered)");

  // recover
  auto* recover_cmd = app.add_subcommand("recover", "recover tampered content");
  std::string rec_img, rec_keys, rec_out, rec_map, rec_provenance, rec_ref, rec_report;
  recover_cmd->add_option("--image", rec_img, "suspect image")->required();
  recover_cmd->add_option("--keys", rec_keys, "key file (with key7)")->required();
  recover_cmd->add_option("--out", rec_out, "recovered image path")->required();
  recover_cmd->add_option("--map", rec_map, "tamper map PNG");
  recover_cmd->add_option("--recovery-map", rec_provenance, "provenance map PNG");
  recover_cmd->add_option("--reference", rec_ref, "original image for the quality report");
  recover_cmd->add_option("--report", rec_report, "quality report CSV (needs --reference)");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "simulate tampering");
  std::string atk_img, atk_out, atk_mask, atk_donor, atk_kind = "splice", atk_region = "center";
  double atk_rate = 0.1;
  std::uint64_t atk_seed = 1;
  int atk_rx = 0, atk_ry = 0, atk_rw = 0, atk_rh = 0;
  attack_cmd->add_option("--image", atk_img, "watermarked image to tamper")->required();
  attack_cmd->add_option("--out", atk_out, "tampered output")->required();
  attack_cmd->add_option("--mask", atk_mask, "ground-truth mask PNG");
  attack_cmd->add_option("--kind", atk_kind, "splice|copy-move|collage|vq|protocol")
      ->capture_default_str();
  attack_cmd->add_option("--region", atk_region, "center|ltr|utb|rect")->capture_default_str();
  attack_cmd->add_option("--rate", atk_rate, "area fraction")->capture_default_str();
  attack_cmd->add_option("--donor", atk_donor, "donor image (collage/vq/protocol)");
  attack_cmd->add_option("--seed", atk_seed, "noise seed")->capture_default_str();
  attack_cmd->add_option("--rx", atk_rx, "rect x");
  attack_cmd->add_option("--ry", atk_ry, "rect y");
  attack_cmd->add_option("--rw", atk_rw, "rect width");
  attack_cmd->add_option("--rh", atk_rh, "rect height");

  // report
  auto* report_cmd = app.add_subcommand("report", "PSNR/SSIM between two images");
  std::string rep_ref, rep_test, rep_csv;
  report_cmd->add_option("--reference", rep_ref, "reference image")->required();
  report_cmd->add_option("--test", rep_test, "image under test")->required();
  report_cmd->add_option("--csv", rep_csv, "also write a CSV report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads <= 0) {
      if (const char* env = std::getenv("TRLG_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) trlg::set_thread_count(threads);

    if (*keygen) {
      std::uint64_t seed = keygen_seed;
      if (!keygen_seeded) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      }
      trlg::save_keychain(keygen_out, trlg::generate_keychain(seed));
      std::printf("wrote %s\n", keygen_out.c_str());
      return kExitOk;
    }

    if (*embed_cmd) {
      trlg::RgbImage host = load_host(embed_host, embed_pad);
      trlg::KeyChain keys = trlg::load_keychain(embed_keys);
      trlg::EmbedOptions opt;
      apply_ga_flags(opt.thresholds_ga, ga_pop, ga_gens, ga_cx, ga_mut, ga_seed);
      apply_ga_flags(opt.key7_ga, ga_pop, ga_gens, ga_cx, ga_mut, ga_seed + 1);
      trlg::EmbedResult res = trlg::embed(host, keys, opt);
      trlg::save_image(embed_out, res.watermarked);
      trlg::save_keychain(embed_keys, res.keys);
      std::printf("embedded: psnr=%.4f dB ssim=%.4f key7=%06x\n", res.quality.psnr,
                  res.quality.ssim, res.keys.key7);
      if (!embed_report.empty()) write_text(embed_report, quality_csv(res.quality));
      if (!trace_prefix.empty()) {
        write_trace_csv(trace_prefix + "_thresholds.csv", res.thresholds_trace);
        write_trace_csv(trace_prefix + "_key7.csv", res.key7_trace);
      }
      if (!dump_prefix.empty()) {
        trlg::YuvImage yuv = trlg::rgb_to_yuv(host);
        trlg::Grid<double> thr =
            trlg::tile_thresholds(res.thresholds, host.width() / 4, host.height() / 4);
        trlg::PrimaryDigest digest = trlg::generate_primary(yuv, thr);
        trlg::Grid<std::uint8_t> valid(digest.blocks_w(), digest.blocks_h(), 1);
        trlg::HalfReconstruction rec = trlg::reconstruct_primary(digest, valid);
        trlg::RgbImage primary_view;
        for (const auto& p : rec.image.planes) primary_view.planes.push_back(trlg::resize(p, 2.0));
        trlg::save_image(dump_prefix + "_primary.png", primary_view);

        trlg::SecondaryDigest sec = trlg::generate_secondary(host);
        trlg::RgbImage halftone_view, inverse_view;
        for (const auto& bits : sec.planes) {
          trlg::Plane bp(bits.width, bits.height);
          for (std::size_t i = 0; i < bits.size(); ++i) bp.samples[i] = bits.data[i] ? 255 : 0;
          halftone_view.planes.push_back(std::move(bp));
          inverse_view.planes.push_back(trlg::resize(trlg::inverse_halftone(bits), 2.0));
        }
        trlg::save_image(dump_prefix + "_secondary.png", halftone_view);
        trlg::save_image(dump_prefix + "_secondary_inverse.png", inverse_view);
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      trlg::RgbImage img = trlg::load_image(verify_img);
      if (img.width() % 4 || img.height() % 4)
        throw CliError(kExitBadInput, "image dimensions must be divisible by 4");
      trlg::KeyChain keys = trlg::load_keychain(verify_keys);
      trlg::TamperMap map = trlg::authenticate(img, keys);
      std::size_t tampered = 0;
      for (auto v : map.data) tampered += v;
      if (!verify_map.empty()) trlg::save_image(verify_map, mask_to_image(map));
      std::printf("tampered blocks: %zu / %zu (%.4f%%)\n", tampered, map.size(),
                  100.0 * static_cast<double>(tampered) / static_cast<double>(map.size()));
      return kExitOk;
    }

    if (*recover_cmd) {
      trlg::RgbImage img = trlg::load_image(rec_img);
      if (img.width() % 4 || img.height() % 4)
        throw CliError(kExitBadInput, "image dimensions must be divisible by 4");
      trlg::KeyChain keys = trlg::load_keychain(rec_keys);
      trlg::RecoveryResult res = trlg::recover(img, keys);
      trlg::save_image(rec_out, res.image);
      if (!rec_map.empty()) trlg::save_image(rec_map, mask_to_image(res.tamper_map));
      if (!rec_provenance.empty())
        trlg::save_image(rec_provenance, recovery_map_to_image(res.recovery_map));
      std::size_t tampered = 0;
      for (auto v : res.tamper_map.data) tampered += v;
      std::printf("recovered %zu tampered blocks\n", tampered);
      if (!rec_ref.empty()) {
        trlg::RgbImage ref = trlg::load_image(rec_ref);
        trlg::QualityReport q = trlg::quality_report(ref, res.image);
        std::printf("quality vs reference: psnr=%.4f dB ssim=%.4f\n", q.psnr, q.ssim);
        if (!rec_report.empty()) write_text(rec_report, quality_csv(q));
      }
      return kExitOk;
    }

    if (*attack_cmd) {
      trlg::RgbImage img = trlg::load_image(atk_img);
      trlg::AttackSpec spec;
      spec.kind = trlg::attack_kind_from_name(atk_kind);
      spec.region = trlg::attack_region_from_name(atk_region);
      spec.rate = atk_rate;
      spec.rng_seed = atk_seed;
      spec.rx = atk_rx;
      spec.ry = atk_ry;
      spec.rw = atk_rw;
      spec.rh = atk_rh;
      trlg::RgbImage donor;
      const trlg::RgbImage* donor_ptr = nullptr;
      if (!atk_donor.empty()) {
        donor = trlg::load_image(atk_donor);
        donor_ptr = &donor;
      }
      trlg::AttackResult res = trlg::apply_attack(img, spec, donor_ptr);
      trlg::save_image(atk_out, res.image);
      if (!atk_mask.empty()) trlg::save_image(atk_mask, mask_to_image(res.mask));
      std::size_t marked = 0;
      for (auto v : res.mask.data) marked += v;
      std::printf("tampered %zu blocks\n", marked);
      return kExitOk;
    }

    if (*report_cmd) {
      trlg::RgbImage ref = trlg::load_image(rep_ref);
      trlg::RgbImage test = trlg::load_image(rep_test);
      trlg::QualityReport q = trlg::quality_report(ref, test);
      std::printf("psnr=%.4f dB ssim=%.6f\n", q.psnr, q.ssim);
      if (!rep_csv.empty()) write_text(rep_csv, quality_csv(q));
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code;
  } catch (const trlg::key_error& e) {
    std::fprintf(stderr, "key error: %s\n", e.what());
    return kExitKeyError;
  } catch (const trlg::image_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
