#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trlg {

struct image_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row-major 2D grid; the workhorse for wavelet bands, maps and masks.
template <typename T>
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(int w, int h, T fill = T{}) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  T& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
  const T& at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return data.size(); }
  bool operator==(const Grid&) const = default;
};

// 8-bit sample plane. Samples are always in [0,255] by construction.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;

  Plane() = default;
  Plane(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), samples(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t& at(int y, int x) { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int y, int x) const { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  bool operator==(const Plane&) const = default;
};

// One plane for grayscale, three (r, g, b) for color.
struct RgbImage {
  std::vector<Plane> planes;

  bool color() const { return planes.size() == 3; }
  int width() const { return planes.empty() ? 0 : planes[0].width; }
  int height() const { return planes.empty() ? 0 : planes[0].height; }
  bool operator==(const RgbImage&) const = default;
};

// Luma always present; chroma planes empty for grayscale input.
struct YuvImage {
  Plane y, u, v;

  bool has_chroma() const { return !u.empty(); }
};

inline std::uint8_t clamp_u8(int v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0, 255));
}
inline std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

// --- file I/O (PNG and binary PGM/PPM; lossless only, 8-bit only) ---

RgbImage load_image(const std::string& path);
void save_image(const std::string& path, const RgbImage& img);

// --- geometry ---

struct PadInfo {
  int right = 0;
  int bottom = 0;
};

// Edge-replication padding up to the next multiple of m on each axis.
Plane pad_to_multiple(const Plane& p, int m, PadInfo* info = nullptr);
RgbImage pad_to_multiple(const RgbImage& img, int m, PadInfo* info = nullptr);
Plane crop(const Plane& p, int width, int height);

// Bicubic resize (Catmull-Rom, a = -0.5), clamped to [0,255]. The factor must
// produce integer output dimensions.
Plane resize(const Plane& p, double factor);

// --- color (BT.601 full range, integer rounding) ---

YuvImage rgb_to_yuv(const RgbImage& img);
RgbImage yuv_to_rgb(const YuvImage& img);

}  // namespace trlg
