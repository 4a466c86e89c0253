#include "trlg/halftone.hpp"

#include <array>
#include <cmath>

namespace trlg {

BinaryPlane floyd_halftone(const Plane& p) {
  BinaryPlane bits(p.width, p.height);
  std::vector<double> carry(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) carry[i] = p.samples[i];
  auto err_at = [&](int y, int x) -> double& {
    return carry[static_cast<std::size_t>(y) * p.width + x];
  };
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      double v = err_at(y, x);
      int bit = v >= 128.0 ? 1 : 0;
      bits.at(y, x) = static_cast<std::uint8_t>(bit);
      double err = v - (bit ? 255.0 : 0.0);
      if (x + 1 < p.width) err_at(y, x + 1) += err * (7.0 / 16.0);
      if (y + 1 < p.height) {
        if (x > 0) err_at(y + 1, x - 1) += err * (3.0 / 16.0);
        err_at(y + 1, x) += err * (5.0 / 16.0);
        if (x + 1 < p.width) err_at(y + 1, x + 1) += err * (1.0 / 16.0);
      }
    }
  }
  return bits;
}

namespace {

std::array<double, 49> gaussian7x7() {
  std::array<double, 49> k{};
  const double sigma = 1.5;
  double sum = 0.0;
  for (int dy = -3; dy <= 3; ++dy)
    for (int dx = -3; dx <= 3; ++dx) {
      double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k[(dy + 3) * 7 + (dx + 3)] = w;
      sum += w;
    }
  for (double& w : k) w /= sum;
  return k;
}

}  // namespace

Plane inverse_halftone(const BinaryPlane& b) {
  static const std::array<double, 49> kernel = gaussian7x7();
  Plane out(b.width, b.height);
  for (int y = 0; y < b.height; ++y) {
    for (int x = 0; x < b.width; ++x) {
      double acc = 0.0;
      for (int dy = -3; dy <= 3; ++dy) {
        int sy = std::clamp(y + dy, 0, b.height - 1);
        for (int dx = -3; dx <= 3; ++dx) {
          int sx = std::clamp(x + dx, 0, b.width - 1);
          acc += kernel[(dy + 3) * 7 + (dx + 3)] * (b.at(sy, sx) ? 255.0 : 0.0);
        }
      }
      out.at(y, x) = clamp_u8(std::round(acc));
    }
  }
  return out;
}

Plane inverse_halftone_masked(const BinaryPlane& b, const Grid<std::uint8_t>& valid,
                              Grid<std::uint8_t>* valid_out) {
  static const std::array<double, 49> kernel = gaussian7x7();
  Plane out(b.width, b.height);
  if (valid_out) *valid_out = Grid<std::uint8_t>(b.width, b.height, 0);
  for (int y = 0; y < b.height; ++y) {
    for (int x = 0; x < b.width; ++x) {
      double acc = 0.0, wsum = 0.0;
      for (int dy = -3; dy <= 3; ++dy) {
        int sy = y + dy;
        if (sy < 0 || sy >= b.height) continue;
        for (int dx = -3; dx <= 3; ++dx) {
          int sx = x + dx;
          if (sx < 0 || sx >= b.width || !valid.at(sy, sx)) continue;
          double w = kernel[(dy + 3) * 7 + (dx + 3)];
          acc += w * (b.at(sy, sx) ? 255.0 : 0.0);
          wsum += w;
        }
      }
      if (wsum > 0.0) {
        out.at(y, x) = clamp_u8(std::round(acc / wsum));
        if (valid_out) valid_out->at(y, x) = 1;
      }
    }
  }
  return out;
}

}  // namespace trlg
