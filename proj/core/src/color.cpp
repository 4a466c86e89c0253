#include <cmath>

#include "trlg/image.hpp"

namespace trlg {

YuvImage rgb_to_yuv(const RgbImage& img) {
  YuvImage out;
  if (!img.color()) {
    if (img.planes.empty()) throw image_error("rgb_to_yuv: empty image");
    out.y = img.planes[0];
    return out;
  }
  const Plane& r = img.planes[0];
  const Plane& g = img.planes[1];
  const Plane& b = img.planes[2];
  out.y = Plane(r.width, r.height);
  out.u = Plane(r.width, r.height);
  out.v = Plane(r.width, r.height);
  for (std::size_t i = 0; i < r.size(); ++i) {
    double R = r.samples[i], G = g.samples[i], B = b.samples[i];
    out.y.samples[i] = clamp_u8(std::round(0.299 * R + 0.587 * G + 0.114 * B));
    out.u.samples[i] = clamp_u8(std::round(-0.168736 * R - 0.331264 * G + 0.5 * B) + 128.0);
    out.v.samples[i] = clamp_u8(std::round(0.5 * R - 0.418688 * G - 0.081312 * B) + 128.0);
  }
  return out;
}

RgbImage yuv_to_rgb(const YuvImage& img) {
  RgbImage out;
  if (!img.has_chroma()) {
    out.planes = {img.y};
    return out;
  }
  Plane r(img.y.width, img.y.height), g = r, b = r;
  for (std::size_t i = 0; i < img.y.size(); ++i) {
    double Y = img.y.samples[i];
    double U = img.u.samples[i] - 128.0;
    double V = img.v.samples[i] - 128.0;
    r.samples[i] = clamp_u8(std::round(Y + 1.402 * V));
    g.samples[i] = clamp_u8(std::round(Y - 0.344136 * U - 0.714136 * V));
    b.samples[i] = clamp_u8(std::round(Y + 1.772 * U));
  }
  out.planes = {std::move(r), std::move(g), std::move(b)};
  return out;
}

}  // namespace trlg
