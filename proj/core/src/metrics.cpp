#include "trlg/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace trlg {

namespace {

double mse_accumulate(const Plane& a, const Plane& b, std::uint64_t& sq, std::uint64_t& n) {
  if (a.width != b.width || a.height != b.height) throw image_error("psnr: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    int d = static_cast<int>(a.samples[i]) - static_cast<int>(b.samples[i]);
    sq += static_cast<std::uint64_t>(d) * d;
  }
  n += a.size();
  return 0.0;
}

double psnr_from(std::uint64_t sq, std::uint64_t n) {
  if (sq == 0) return std::numeric_limits<double>::infinity();
  double mse = static_cast<double>(sq) / static_cast<double>(n);
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

constexpr int kWin = 11;

const std::array<double, kWin * kWin>& ssim_window() {
  static const std::array<double, kWin * kWin> w = [] {
    std::array<double, kWin * kWin> k{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int y = 0; y < kWin; ++y)
      for (int x = 0; x < kWin; ++x) {
        double dy = y - 5, dx = x - 5;
        double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        k[y * kWin + x] = v;
        sum += v;
      }
    for (double& v : k) v /= sum;
    return k;
  }();
  return w;
}

}  // namespace

double psnr(const Plane& a, const Plane& b) {
  std::uint64_t sq = 0, n = 0;
  mse_accumulate(a, b, sq, n);
  return psnr_from(sq, n);
}

double psnr(const RgbImage& a, const RgbImage& b) {
  if (a.planes.size() != b.planes.size()) throw image_error("psnr: plane count mismatch");
  std::uint64_t sq = 0, n = 0;
  for (std::size_t p = 0; p < a.planes.size(); ++p) mse_accumulate(a.planes[p], b.planes[p], sq, n);
  return psnr_from(sq, n);
}

double ssim(const Plane& a, const Plane& b) {
  if (a.width != b.width || a.height != b.height) throw image_error("ssim: dimension mismatch");
  if (a.width < kWin || a.height < kWin) throw image_error("ssim: image smaller than window");
  const auto& w = ssim_window();
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  double total = 0.0;
  std::int64_t count = 0;
  for (int y = 0; y + kWin <= a.height; ++y) {
    for (int x = 0; x + kWin <= a.width; ++x) {
      double mu_a = 0, mu_b = 0, aa = 0, bb = 0, ab = 0;
      for (int wy = 0; wy < kWin; ++wy) {
        for (int wx = 0; wx < kWin; ++wx) {
          double wt = w[wy * kWin + wx];
          double va = a.at(y + wy, x + wx);
          double vb = b.at(y + wy, x + wx);
          mu_a += wt * va;
          mu_b += wt * vb;
          aa += wt * va * va;
          bb += wt * vb * vb;
          ab += wt * va * vb;
        }
      }
      double var_a = aa - mu_a * mu_a;
      double var_b = bb - mu_b * mu_b;
      double cov = ab - mu_a * mu_b;
      double s = ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) /
                 ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      total += s;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

double ssim(const RgbImage& a, const RgbImage& b) {
  if (a.planes.size() != b.planes.size()) throw image_error("ssim: plane count mismatch");
  double total = 0.0;
  for (std::size_t p = 0; p < a.planes.size(); ++p) total += ssim(a.planes[p], b.planes[p]);
  return total / static_cast<double>(a.planes.size());
}

QualityReport quality_report(const RgbImage& a, const RgbImage& b) {
  QualityReport rep;
  rep.psnr = psnr(a, b);
  rep.ssim = ssim(a, b);
  for (std::size_t p = 0; p < a.planes.size(); ++p) {
    rep.psnr_per_plane.push_back(psnr(a.planes[p], b.planes[p]));
    rep.ssim_per_plane.push_back(ssim(a.planes[p], b.planes[p]));
  }
  return rep;
}

SecurityReport security_metrics(const std::vector<std::uint8_t>& before,
                                const std::vector<std::uint8_t>& after) {
  if (before.size() != after.size()) throw image_error("security_metrics: length mismatch");
  if (after.empty()) throw image_error("security_metrics: empty input");
  SecurityReport rep;
  std::array<std::uint64_t, 256> hist_b{}, hist_a{};
  std::uint64_t diff = 0;
  double abs_sum = 0.0, sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    hist_b[before[i]]++;
    hist_a[after[i]]++;
    int d = std::abs(static_cast<int>(before[i]) - static_cast<int>(after[i]));
    if (d != 0) ++diff;
    abs_sum += d;
    sum += after[i];
    sum_sq += static_cast<double>(after[i]) * after[i];
  }
  double n = static_cast<double>(after.size());
  for (std::uint64_t c : hist_a) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    rep.entropy -= p * std::log2(p);
  }
  double mean = sum / n;
  rep.std_dev = std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
  rep.mae = abs_sum / n;
  rep.npcr = static_cast<double>(diff) / n;
  rep.uaci = abs_sum / n / 255.0;
  double eq = 0.0;
  for (int v = 0; v < 256; ++v)
    eq += std::abs(static_cast<double>(hist_b[v]) - static_cast<double>(hist_a[v]));
  rep.eq = eq / 256.0;
  return rep;
}

}  // namespace trlg
