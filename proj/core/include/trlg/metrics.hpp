#pragma once

#include <cstdint>
#include <vector>

#include "trlg/image.hpp"

namespace trlg {

struct QualityReport {
  double psnr = 0.0;  // +inf for identical inputs
  double ssim = 0.0;
  std::vector<double> psnr_per_plane;
  std::vector<double> ssim_per_plane;
};

struct SecurityReport {
  double entropy = 0.0;  // bits/symbol of `after`
  double std_dev = 0.0;  // of `after` byte values
  double mae = 0.0;      // mean |before - after|
  double npcr = 0.0;     // fraction of differing positions
  double uaci = 0.0;     // mean |before - after| / 255
  double eq = 0.0;       // sum |hist_before - hist_after| / 256
};

// 10*log10(255^2 / MSE) over all samples and planes; +inf when identical.
double psnr(const Plane& a, const Plane& b);
double psnr(const RgbImage& a, const RgbImage& b);

// Standard SSIM: 11x11 Gaussian window sigma 1.5, K1=0.01, K2=0.03, L=255,
// mean over valid windows. Color images average the per-plane values.
double ssim(const Plane& a, const Plane& b);
double ssim(const RgbImage& a, const RgbImage& b);

QualityReport quality_report(const RgbImage& a, const RgbImage& b);

SecurityReport security_metrics(const std::vector<std::uint8_t>& before,
                                const std::vector<std::uint8_t>& after);

}  // namespace trlg
