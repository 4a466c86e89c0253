#include "trlg/image.hpp"

namespace trlg {

Plane pad_to_multiple(const Plane& p, int m, PadInfo* info) {
  if (m < 1) throw image_error("pad_to_multiple: m must be >= 1");
  int w = (p.width + m - 1) / m * m;
  int h = (p.height + m - 1) / m * m;
  if (info) {
    info->right = w - p.width;
    info->bottom = h - p.height;
  }
  if (w == p.width && h == p.height) return p;
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    int sy = std::min(y, p.height - 1);
    for (int x = 0; x < w; ++x) out.at(y, x) = p.at(sy, std::min(x, p.width - 1));
  }
  return out;
}

RgbImage pad_to_multiple(const RgbImage& img, int m, PadInfo* info) {
  RgbImage out;
  out.planes.reserve(img.planes.size());
  for (const Plane& p : img.planes) out.planes.push_back(pad_to_multiple(p, m, info));
  return out;
}

Plane crop(const Plane& p, int width, int height) {
  if (width > p.width || height > p.height) throw image_error("crop: target exceeds source");
  Plane out(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) out.at(y, x) = p.at(y, x);
  return out;
}

}  // namespace trlg
