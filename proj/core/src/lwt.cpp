#include "trlg/lwt.hpp"

#include <cmath>

namespace trlg {

namespace {
// floor(x/2); C++20 guarantees arithmetic right shift on signed values
inline int half_floor(int x) { return x >> 1; }
}  // namespace

WaveletBands forward_haar(const Plane& p) {
  if (p.width % 2 != 0 || p.height % 2 != 0)
    throw image_error("forward_haar: dimensions must be even");
  int bw = p.width / 2, bh = p.height / 2;
  WaveletBands b{Grid<int>(bw, bh), Grid<int>(bw, bh), Grid<int>(bw, bh), Grid<int>(bw, bh)};
  for (int y = 0; y < bh; ++y) {
    for (int x = 0; x < bw; ++x) {
      int a0 = p.at(2 * y, 2 * x), a1 = p.at(2 * y, 2 * x + 1);
      int a2 = p.at(2 * y + 1, 2 * x), a3 = p.at(2 * y + 1, 2 * x + 1);
      // rows
      int d0 = a1 - a0, s0 = a0 + half_floor(d0);
      int d1 = a3 - a2, s1 = a2 + half_floor(d1);
      // columns
      int lh = s1 - s0;
      int ll = s0 + half_floor(lh);
      int hh = d1 - d0;
      int hl = d0 + half_floor(hh);
      b.ll.at(y, x) = ll;
      b.lh.at(y, x) = lh;
      b.hl.at(y, x) = hl;
      b.hh.at(y, x) = hh;
    }
  }
  return b;
}

Grid<int> inverse_haar(const WaveletBands& b) {
  int bw = b.ll.width, bh = b.ll.height;
  if (b.lh.width != bw || b.hl.width != bw || b.hh.width != bw ||
      b.lh.height != bh || b.hl.height != bh || b.hh.height != bh)
    throw image_error("inverse_haar: band dimensions mismatch");
  Grid<int> out(bw * 2, bh * 2);
  for (int y = 0; y < bh; ++y) {
    for (int x = 0; x < bw; ++x) {
      int ll = b.ll.at(y, x), lh = b.lh.at(y, x);
      int hl = b.hl.at(y, x), hh = b.hh.at(y, x);
      int s0 = ll - half_floor(lh), s1 = lh + s0;
      int d0 = hl - half_floor(hh), d1 = hh + d0;
      int a0 = s0 - half_floor(d0), a1 = d0 + a0;
      int a2 = s1 - half_floor(d1), a3 = d1 + a2;
      out.at(2 * y, 2 * x) = a0;
      out.at(2 * y, 2 * x + 1) = a1;
      out.at(2 * y + 1, 2 * x) = a2;
      out.at(2 * y + 1, 2 * x + 1) = a3;
    }
  }
  return out;
}

int quantize(int c, int mu) {
  if (mu < 1) throw image_error("quantize: mu must be >= 1");
  int q = std::abs(c) / mu;
  return c < 0 ? -q : q;
}

int dequantize(int c, int mu) {
  if (mu < 1) throw image_error("dequantize: mu must be >= 1");
  return c * mu;
}

}  // namespace trlg
