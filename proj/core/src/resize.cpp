#include <cmath>

#include "trlg/image.hpp"

namespace trlg {

namespace {

// Catmull-Rom bicubic kernel (a = -0.5).
double cubic_weight(double t) {
  t = std::fabs(t);
  if (t <= 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

int mirror_clamp(int i, int n) { return std::clamp(i, 0, n - 1); }

// One separable pass along x; source rows become dst_w-wide rows of doubles.
std::vector<double> resample_rows(const std::vector<double>& src, int src_w, int src_h,
                                  int dst_w, double factor) {
  std::vector<double> out(static_cast<std::size_t>(dst_w) * src_h);
  std::vector<int> idx(static_cast<std::size_t>(dst_w) * 4);
  std::vector<double> wgt(static_cast<std::size_t>(dst_w) * 4);
  for (int x = 0; x < dst_w; ++x) {
    double sx = (x + 0.5) / factor - 0.5;
    int base = static_cast<int>(std::floor(sx)) - 1;
    for (int t = 0; t < 4; ++t) {
      idx[4 * x + t] = mirror_clamp(base + t, src_w);
      wgt[4 * x + t] = cubic_weight(sx - (base + t));
    }
  }
  for (int y = 0; y < src_h; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * src_w;
    double* orow = out.data() + static_cast<std::size_t>(y) * dst_w;
    for (int x = 0; x < dst_w; ++x) {
      double acc = 0.0;
      for (int t = 0; t < 4; ++t) acc += wgt[4 * x + t] * row[idx[4 * x + t]];
      orow[x] = acc;
    }
  }
  return out;
}

std::vector<double> transpose(const std::vector<double>& src, int w, int h) {
  std::vector<double> out(src.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out[static_cast<std::size_t>(x) * h + y] = src[static_cast<std::size_t>(y) * w + x];
  return out;
}

}  // namespace

Plane resize(const Plane& p, double factor) {
  double wf = p.width * factor;
  double hf = p.height * factor;
  int dst_w = static_cast<int>(std::lround(wf));
  int dst_h = static_cast<int>(std::lround(hf));
  if (std::fabs(wf - dst_w) > 1e-9 || std::fabs(hf - dst_h) > 1e-9)
    throw image_error("resize: factor must yield integer dimensions");
  if (dst_w == p.width && dst_h == p.height) return p;

  std::vector<double> work(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) work[i] = p.samples[i];
  work = resample_rows(work, p.width, p.height, dst_w, factor);
  work = transpose(work, dst_w, p.height);
  work = resample_rows(work, p.height, dst_w, dst_h, factor);
  work = transpose(work, dst_h, dst_w);

  Plane out(dst_w, dst_h);
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] = clamp_u8(std::round(work[i]));
  return out;
}

}  // namespace trlg
