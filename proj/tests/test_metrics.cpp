#include <doctest.h>

#include <cmath>

#include "support/synth.hpp"
#include "trlg/metrics.hpp"
#include "trlg/rng.hpp"

using namespace trlg;

TEST_CASE("psnr analytic points") {
  Plane a = testsupport::random_plane(64, 64, 1);
  CHECK(std::isinf(psnr(a, a)));

  Plane b = a;
  for (auto& s : b.samples) s = clamp_u8(static_cast<int>(s) + 3);
  // a few samples clamp at 255; keep them below the rail instead
  b = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    b.samples[i] = static_cast<std::uint8_t>(a.samples[i] <= 252 ? a.samples[i] + 3 : a.samples[i] - 3);
  CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 9.0)).epsilon(1e-12));
  CHECK(psnr(a, b) == doctest::Approx(psnr(b, a)));
}

TEST_CASE("uniform 2-lsb replacement lands near the derived 44.15 dB") {
  // E[(x - (x&~3|u))^2] over uniform u in 0..3 and uniform lsbs = 2.5
  Plane a = testsupport::random_plane(512, 512, 2);
  Plane b = a;
  SplitMix64 rng(77);
  for (auto& s : b.samples) s = static_cast<std::uint8_t>((s & ~3) | (rng.next() & 3));
  double p = psnr(a, b);
  CHECK(p > 43.9);
  CHECK(p < 44.5);
}

TEST_CASE("ssim identity and inversion") {
  Plane x = load_image(testsupport::data_path("portrait_gray.pgm")).planes[0];
  CHECK(ssim(x, x) == doctest::Approx(1.0).epsilon(1e-12));
  Plane inv = x;
  for (auto& s : inv.samples) s = static_cast<std::uint8_t>(255 - s);
  CHECK(ssim(x, inv) < 0.3);
}

TEST_CASE("security metrics analytic points") {
  // exactly uniform byte histogram has entropy 8
  std::vector<std::uint8_t> uniform(256 * 16);
  for (std::size_t i = 0; i < uniform.size(); ++i) uniform[i] = static_cast<std::uint8_t>(i & 0xff);
  SecurityReport rep = security_metrics(uniform, uniform);
  CHECK(rep.entropy == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(rep.npcr == 0.0);
  CHECK(rep.uaci == 0.0);
  CHECK(rep.mae == 0.0);
  CHECK(rep.eq == 0.0);

  std::vector<std::uint8_t> zeros(4096, 0);
  SecurityReport rep0 = security_metrics(zeros, zeros);
  CHECK(rep0.entropy == 0.0);
  CHECK(rep0.std_dev == 0.0);

  std::vector<std::uint8_t> flipped(zeros.size(), 255);
  SecurityReport repf = security_metrics(zeros, flipped);
  CHECK(repf.npcr == 1.0);
  CHECK(repf.uaci == doctest::Approx(1.0));
  CHECK(repf.mae == doctest::Approx(255.0));

  std::vector<std::uint8_t> longer(zeros.size() + 1, 0);
  CHECK_THROWS_AS(security_metrics(zeros, longer), image_error);
}
