#include "trlg/attacks.hpp"

#include <cmath>

#include "trlg/rng.hpp"

namespace trlg {

namespace {

struct Rect {
  int x = 0, y = 0, w = 0, h = 0;
};

int snap_down_even(int v) { return v & ~1; }
int snap_up_even(int v) { return (v + 1) & ~1; }

Rect region_rect(const AttackSpec& spec, int W, int H) {
  if (spec.region == AttackRegion::rect) {
    Rect r{snap_down_even(spec.rx), snap_down_even(spec.ry), snap_up_even(spec.rw), snap_up_even(spec.rh)};
    if (r.x < 0 || r.y < 0 || r.x + r.w > W || r.y + r.h > H || r.w <= 0 || r.h <= 0)
      throw image_error("attack: rectangle out of bounds");
    return r;
  }
  if (spec.rate < 0.0 || spec.rate > 1.0) throw image_error("attack: rate must lie in [0, 1]");
  if (spec.rate == 0.0) return {0, 0, 0, 0};
  Rect r;
  switch (spec.region) {
    case AttackRegion::center: {
      // centered rectangle with the image aspect, snapped outward to blocks
      double s = std::sqrt(spec.rate);
      int w = std::min(W, snap_up_even(static_cast<int>(std::ceil(W * s))));
      int h = std::min(H, snap_up_even(static_cast<int>(std::ceil(H * s))));
      r = {snap_down_even((W - w) / 2), snap_down_even((H - h) / 2), w, h};
      break;
    }
    case AttackRegion::left_to_right:
      r = {0, 0, std::min(W, snap_up_even(static_cast<int>(std::ceil(W * spec.rate)))), H};
      break;
    case AttackRegion::up_to_bottom:
      r = {0, 0, W, std::min(H, snap_up_even(static_cast<int>(std::ceil(H * spec.rate))))};
      break;
    default:
      throw image_error("attack: bad region");
  }
  return r;
}

}  // namespace

AttackResult apply_attack(const RgbImage& img, const AttackSpec& spec, const RgbImage* donor) {
  int W = img.width(), H = img.height();
  bool needs_donor = spec.kind == AttackKind::collage || spec.kind == AttackKind::vector_quantization ||
                     spec.kind == AttackKind::protocol;
  if (needs_donor && !donor) throw image_error("attack: this attack requires a donor image");
  if (donor && (donor->width() != W || donor->height() != H ||
                donor->planes.size() != img.planes.size()))
    throw image_error("attack: donor must match the target's geometry");

  Rect r = region_rect(spec, W, H);
  AttackResult res;
  res.image = img;
  res.mask = Grid<std::uint8_t>(W / 2, H / 2, 0);
  if (r.w == 0 || r.h == 0) return res;

  SplitMix64 rng(spec.rng_seed);
  // vector-quantization and copy-move take their source at a wrapped offset,
  // so source and destination coordinates always differ
  int off_x = W / 2, off_y = H / 2;

  for (std::size_t k = 0; k < img.planes.size(); ++k) {
    const Plane& src = img.planes[k];
    Plane& dst = res.image.planes[k];
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) {
        std::uint8_t v = dst.at(y, x);
        switch (spec.kind) {
          case AttackKind::splice:
            v = donor ? donor->planes[k].at(y, x) : static_cast<std::uint8_t>(rng.next() & 0xff);
            break;
          case AttackKind::copy_move:
            v = src.at((y + off_y) % H, (x + off_x) % W);
            break;
          case AttackKind::collage:
            v = donor->planes[k].at(y, x);
            break;
          case AttackKind::vector_quantization:
            v = donor->planes[k].at((y + off_y) % H, (x + off_x) % W);
            break;
          case AttackKind::protocol:
            v = static_cast<std::uint8_t>((donor->planes[k].at(y, x) & 252) | (dst.at(y, x) & 3));
            break;
        }
        dst.at(y, x) = v;
      }
    }
  }

  for (std::size_t k = 0; k < img.planes.size(); ++k)
    for (int y = 0; y < H; ++y)
      for (int x = 0; x < W; ++x)
        if (res.image.planes[k].at(y, x) != img.planes[k].at(y, x)) res.mask.at(y / 2, x / 2) = 1;
  return res;
}

AttackKind attack_kind_from_name(const std::string& name) {
  if (name == "splice") return AttackKind::splice;
  if (name == "copy-move" || name == "copy_move") return AttackKind::copy_move;
  if (name == "collage") return AttackKind::collage;
  if (name == "vq" || name == "vector-quantization" || name == "vector_quantization")
    return AttackKind::vector_quantization;
  if (name == "protocol") return AttackKind::protocol;
  throw image_error("unknown attack kind: " + name);
}

AttackRegion attack_region_from_name(const std::string& name) {
  if (name == "center") return AttackRegion::center;
  if (name == "left-to-right" || name == "ltr") return AttackRegion::left_to_right;
  if (name == "up-to-bottom" || name == "utb") return AttackRegion::up_to_bottom;
  if (name == "rect") return AttackRegion::rect;
  throw image_error("unknown attack region: " + name);
}

}  // namespace trlg
