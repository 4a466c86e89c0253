#pragma once

namespace trlg::detmath {

// Bit-reproducible transcendentals for keystream and content-hash math.
//
// The pipeline derives integers as floor(f(x) * 1e14) mod m, which amplifies
// sub-ulp differences between platform libm builds into different keystreams.
// These are fixed-coefficient kernels (fdlibm lineage) evaluated in a fixed
// order in binary64, so embedder and extractor agree bit-for-bit on any host.
// Golden vectors in the test suite pin the exact outputs.

// atan(x); accepts +-inf.
double atan(double x);

// acos(x) for x in [-1, 1], via 2*atan(sqrt((1-x)/(1+x))).
double acos(double x);

// cos(x) for |x| < 2^19 * pi/2 (covers the CCS range (mu+1)*acos <= 11*pi).
double cos(double x);

}  // namespace trlg::detmath
