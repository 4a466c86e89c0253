#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "support/synth.hpp"
#include "trlg/image.hpp"
#include "trlg/rng.hpp"

using namespace trlg;
using testsupport::cloud_image;
using testsupport::data_path;
using testsupport::random_plane;

TEST_CASE("pnm and png round trips are bit exact") {
  RgbImage img = cloud_image(64, 48, 7, true);
  auto tmp = std::filesystem::temp_directory_path();
  for (const char* name : {"trlg_io_test.ppm", "trlg_io_test.png"}) {
    std::string path = (tmp / name).string();
    save_image(path, img);
    RgbImage back = load_image(path);
    CHECK(back == img);
    std::filesystem::remove(path);
  }
  RgbImage gray;
  gray.planes = {random_plane(33, 21, 5)};
  std::string path = (tmp / "trlg_io_gray.pgm").string();
  save_image(path, gray);
  CHECK(load_image(path) == gray);
  std::filesystem::remove(path);
}

TEST_CASE("fixture corpus images load with expected geometry") {
  RgbImage portrait = load_image(data_path("portrait.ppm"));
  CHECK(portrait.color());
  CHECK(portrait.width() == 512);
  CHECK(portrait.height() == 512);
  RgbImage gray = load_image(data_path("portrait_gray.pgm"));
  CHECK(!gray.color());
  CHECK(gray.width() == 512);
}

TEST_CASE("pad_to_multiple replicates edges and records the pad") {
  Plane p(510, 512);
  SplitMix64 rng(3);
  for (auto& s : p.samples) s = static_cast<std::uint8_t>(rng.next() & 0xff);
  PadInfo info;
  Plane padded = pad_to_multiple(p, 4, &info);
  CHECK(padded.width == 512);
  CHECK(padded.height == 512);
  CHECK(info.right == 2);
  CHECK(info.bottom == 0);
  for (int y = 0; y < 512; ++y) {
    CHECK(padded.at(y, 510) == p.at(y, 509));
    CHECK(padded.at(y, 511) == p.at(y, 509));
  }
  CHECK(pad_to_multiple(padded, 4) == padded);

  Plane tiny(1, 1, 77);
  Plane t4 = pad_to_multiple(tiny, 4);
  CHECK(t4.width == 4);
  CHECK(t4.height == 4);
  for (auto s : t4.samples) CHECK(s == 77);
}

TEST_CASE("bicubic resize basics") {
  Plane c(512, 512, 77);
  Plane half = resize(c, 0.5);
  CHECK(half.width == 256);
  CHECK(half.height == 256);
  for (auto s : half.samples) CHECK(s == 77);

  // checkerboard stays clamped in range
  Plane cb(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) cb.at(y, x) = ((x + y) & 1) ? 255 : 0;
  Plane cb_half = resize(cb, 0.5);
  CHECK(cb_half.width == 2);

  Plane p = random_plane(200, 120, 11);
  Plane round = resize(resize(p, 0.5), 2.0);
  CHECK(round.width == p.width);
  CHECK(round.height == p.height);

  CHECK_THROWS_AS(resize(Plane(5, 5), 0.5), image_error);
}

TEST_CASE("yuv conversion hits the documented integer points") {
  RgbImage px;
  px.planes = {Plane(1, 1, 200), Plane(1, 1, 200), Plane(1, 1, 200)};
  YuvImage yuv = rgb_to_yuv(px);
  CHECK(yuv.y.at(0, 0) == 200);
  CHECK(yuv.u.at(0, 0) == 128);
  CHECK(yuv.v.at(0, 0) == 128);

  px.planes = {Plane(1, 1, 255), Plane(1, 1, 0), Plane(1, 1, 0)};
  yuv = rgb_to_yuv(px);
  CHECK(yuv.y.at(0, 0) == 76);
  CHECK(yuv.u.at(0, 0) == 85);
  CHECK(yuv.v.at(0, 0) == 255);
}

TEST_CASE("yuv round trip deviates by at most one level per sample") {
  RgbImage img = cloud_image(96, 64, 21, true);
  // add hard saturated corners to stress the clamped chroma
  for (int i = 0; i < 8; ++i) {
    img.planes[0].samples[static_cast<std::size_t>(i)] = 255;
    img.planes[1].samples[static_cast<std::size_t>(i)] = 0;
    img.planes[2].samples[static_cast<std::size_t>(i)] = i % 2 ? 255 : 0;
  }
  RgbImage back = yuv_to_rgb(rgb_to_yuv(img));
  int max_dev = 0;
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < img.planes[0].size(); ++i)
      max_dev = std::max(max_dev, std::abs(static_cast<int>(back.planes[k].samples[i]) -
                                           static_cast<int>(img.planes[k].samples[i])));
  CHECK(max_dev <= 1);
}

TEST_CASE("grayscale passes through color conversion untouched") {
  RgbImage gray;
  gray.planes = {random_plane(16, 16, 1)};
  YuvImage yuv = rgb_to_yuv(gray);
  CHECK(!yuv.has_chroma());
  CHECK(yuv.y == gray.planes[0]);
  CHECK(yuv_to_rgb(yuv) == gray);
}
