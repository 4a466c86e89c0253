#pragma once

#include "trlg/image.hpp"

namespace trlg {

using BinaryPlane = Grid<std::uint8_t>;  // values strictly 0/1

// Floyd-Steinberg error diffusion: raster scan, threshold 128, weights
// 7/16 (right), 3/16 (below-left), 5/16 (below), 1/16 (below-right).
// Taps falling off the border are dropped without renormalization. The exact
// bit pattern is part of the watermark format, so embed and extract must both
// use this implementation.
BinaryPlane floyd_halftone(const Plane& p);

// Continuous-tone estimate of a halftone: 7x7 Gaussian (sigma 1.5) over the
// {0,255}-scaled bits.
Plane inverse_halftone(const BinaryPlane& b);

// Same filter restricted to valid bits (weights renormalized over the valid
// support). valid_out marks pixels with any support; others are left 0.
Plane inverse_halftone_masked(const BinaryPlane& b, const Grid<std::uint8_t>& valid,
                              Grid<std::uint8_t>* valid_out);

}  // namespace trlg
