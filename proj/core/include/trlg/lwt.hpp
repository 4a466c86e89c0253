#pragma once

#include "trlg/image.hpp"

namespace trlg {

// One-level integer Haar lifting bands of an even-dimensioned plane.
// The lifting is the integer-to-integer S-transform (predict d = o - e,
// update s = e + floor(d/2)), rows then columns, so ll stays in [0,255] and
// a quantized ll fits 7 bits -- the digest bit masks rely on that.
// Ranges for 8-bit input: ll [0,255], lh/hl [-255,255], hh [-510,510].
struct WaveletBands {
  Grid<int> ll, lh, hl, hh;

  int width() const { return ll.width; }
  int height() const { return ll.height; }
};

WaveletBands forward_haar(const Plane& p);

// Exact inverse on untouched bands; quantized/masked bands yield the
// approximation (caller clamps to [0,255]).
Grid<int> inverse_haar(const WaveletBands& b);

// sign(c) * floor(|c| / mu)
int quantize(int c, int mu);
// c * mu
int dequantize(int c, int mu);

}  // namespace trlg
