#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

#include "trlg/detmath.hpp"

namespace dm = trlg::detmath;

namespace {
std::uint64_t bits_of(double x) { return std::bit_cast<std::uint64_t>(x); }
}

TEST_CASE("det atan agrees with libm to sub-ulp-ish accuracy") {
  for (double x : {0.0, 1e-9, 0.1, 0.3, 0.4375, 0.5, 0.9, 1.0, 1.1875, 2.0, 2.4375, 3.0, 10.0,
                   1e6, -0.7, -3.0, -1e6}) {
    CHECK(dm::atan(x) == doctest::Approx(std::atan(x)).epsilon(1e-15));
  }
  CHECK(dm::atan(std::numeric_limits<double>::infinity()) ==
        doctest::Approx(std::atan(std::numeric_limits<double>::infinity())).epsilon(1e-16));
  CHECK(dm::atan(-std::numeric_limits<double>::infinity()) < 0);
}

TEST_CASE("det acos and cos agree with libm") {
  for (double x : {-0.999, -0.5, -0.1, 0.0, 0.1, 0.25, 0.5, 0.7071, 0.999, 1.0}) {
    CHECK(dm::acos(x) == doctest::Approx(std::acos(x)).epsilon(2e-15));
  }
  for (double x : {0.0, 0.1, 0.5, 1.0, 1.57, 3.14, 4.0, 6.28, 10.0, 20.0, 34.5, -2.5, -15.0}) {
    CHECK(dm::cos(x) == doctest::Approx(std::cos(x)).epsilon(4e-15));
  }
}

// Frozen bit patterns: any change to kernels or compile flags that alters a
// single ulp shows up here before it silently changes every keystream.
TEST_CASE("golden vectors pin exact bit patterns") {
  CHECK(bits_of(dm::atan(1.0)) == bits_of(0x1.921fb54442d18p-1));
  CHECK(bits_of(dm::atan(3.0)) == 0x3FF3FC176B7A8560ull);
  CHECK(bits_of(dm::atan(0.2)) == 0x3FC94441F8F7260Cull);
  CHECK(bits_of(dm::acos(0.0)) == 0x3FF921FB54442D18ull);
  CHECK(bits_of(dm::acos(0.3)) == 0x3FF441F5ECBEEF58ull);
  CHECK(bits_of(dm::acos(-0.7)) == 0x4002C501446CD5F2ull);
  CHECK(bits_of(dm::cos(6.283185307179586)) == bits_of(1.0));
  CHECK(bits_of(dm::cos(13.7)) == 0x3FDB18918B97F7EAull);
  CHECK(bits_of(dm::cos(2.0)) == 0xBFDAA22657537205ull);
}
