#include "trlg/detmath.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

// Kernels follow the classic fdlibm (Sun Microsystems) algorithms with their
// original coefficient tables. Evaluation order is load-bearing: do not
// refactor the arithmetic, and keep -ffp-contract=off on this file.

namespace trlg::detmath {
namespace {

inline std::int32_t high_word(double x) {
  return static_cast<std::int32_t>(std::bit_cast<std::uint64_t>(x) >> 32);
}

inline std::uint32_t low_word(double x) {
  return static_cast<std::uint32_t>(std::bit_cast<std::uint64_t>(x) & 0xffffffffu);
}

inline double from_words(std::uint32_t hi, std::uint32_t lo) {
  return std::bit_cast<double>((static_cast<std::uint64_t>(hi) << 32) | lo);
}

constexpr double kAtanHi[4] = {
    4.63647609000806093515e-01,  // atan(0.5) hi
    7.85398163397448278999e-01,  // atan(1.0) hi
    9.82793723247329054082e-01,  // atan(1.5) hi
    1.57079632679489655800e+00,  // atan(inf) hi
};
constexpr double kAtanLo[4] = {
    2.26987774529616870924e-17,
    3.06161699786838301793e-17,
    1.39033110312309984516e-17,
    6.12323399573676603587e-17,
};
constexpr double kAtanT[11] = {
    3.33333333333329318027e-01,  -1.99999999998764832476e-01,
    1.42857142725034663711e-01,  -1.11111104054623557880e-01,
    9.09088713343650656196e-02,  -7.69187620504482999495e-02,
    6.66107313738753120669e-02,  -5.83357013379057348645e-02,
    4.97687799461593236017e-02,  -3.65315727442169155270e-02,
    1.62858201153657823623e-02,
};

constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;

constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

constexpr double kInvPio2 = 6.36619772367581382433e-01;
constexpr double kPio2_1 = 1.57079632673412561417e+00;
constexpr double kPio2_1t = 6.07710050650619224932e-11;
constexpr double kPio2_2 = 6.07710050630396597660e-11;
constexpr double kPio2_2t = 2.02226624879595063154e-21;
constexpr double kPio2_3 = 2.02226624871116645580e-21;
constexpr double kPio2_3t = 8.47842766036889956997e-32;

// sin on [-pi/4, pi/4]; y is the tail of x, iy != 0 when y is meaningful.
double kernel_sin(double x, double y, int iy) {
  std::int32_t ix = high_word(x) & 0x7fffffff;
  if (ix < 0x3e400000) {
    if (static_cast<int>(x) == 0) return x;
  }
  double z = x * x;
  double v = z * x;
  double r = kS2 + z * (kS3 + z * (kS4 + z * (kS5 + z * kS6)));
  if (iy == 0) return x + v * (kS1 + z * r);
  return x - ((z * (0.5 * y - v * r) - y) - v * kS1);
}

// cos on [-pi/4, pi/4]; y is the tail of x.
double kernel_cos(double x, double y) {
  std::int32_t ix = high_word(x) & 0x7fffffff;
  if (ix < 0x3e400000) {
    if (static_cast<int>(x) == 0) return 1.0;
  }
  double z = x * x;
  double r = z * (kC1 + z * (kC2 + z * (kC3 + z * (kC4 + z * (kC5 + z * kC6)))));
  if (ix < 0x3FD33333) {  // |x| < 0.3
    return 1.0 - (0.5 * z - (z * r - x * y));
  }
  double qx;
  if (ix > 0x3fe90000) {  // |x| > 0.78125
    qx = 0.28125;
  } else {
    qx = from_words(static_cast<std::uint32_t>(ix - 0x00200000), 0);  // |x|/4
  }
  double hz = 0.5 * z - qx;
  double a = 1.0 - qx;
  return a - (hz - (z * r - x * y));
}

// Cody-Waite reduction of x into y[0]+y[1], |y[0]| <= pi/4. Returns n with
// x = n*pi/2 + y. Valid for |x| < 2^19 * pi/2, all this library ever needs.
int rem_pio2(double x, double y[2]) {
  std::int32_t hx = high_word(x);
  std::int32_t ix = hx & 0x7fffffff;
  if (ix <= 0x3fe921fb) {  // |x| <= pi/4
    y[0] = x;
    y[1] = 0.0;
    return 0;
  }
  double t = std::fabs(x);
  int n = static_cast<int>(t * kInvPio2 + 0.5);
  double fn = static_cast<double>(n);
  double r = t - fn * kPio2_1;
  double w = fn * kPio2_1t;
  y[0] = r - w;
  std::int32_t j = ix >> 20;
  std::int32_t i = j - ((high_word(y[0]) >> 20) & 0x7ff);
  if (i > 16) {  // second round, 118-bit pi
    t = r;
    w = fn * kPio2_2;
    r = t - w;
    w = fn * kPio2_2t - ((t - r) - w);
    y[0] = r - w;
    i = j - ((high_word(y[0]) >> 20) & 0x7ff);
    if (i > 49) {  // third round, 151-bit pi
      t = r;
      w = fn * kPio2_3;
      r = t - w;
      w = fn * kPio2_3t - ((t - r) - w);
      y[0] = r - w;
    }
  }
  y[1] = (r - y[0]) - w;
  if (hx < 0) {
    y[0] = -y[0];
    y[1] = -y[1];
    return -n;
  }
  return n;
}

}  // namespace

double atan(double x) {
  std::int32_t hx = high_word(x);
  std::int32_t ix = hx & 0x7fffffff;
  int id;
  if (ix >= 0x44100000) {  // |x| >= 2^66, inf included
    if (ix > 0x7ff00000 || (ix == 0x7ff00000 && low_word(x) != 0)) return x + x;
    return hx > 0 ? kAtanHi[3] + kAtanLo[3] : -kAtanHi[3] - kAtanLo[3];
  }
  if (ix < 0x3fdc0000) {  // |x| < 0.4375
    if (ix < 0x3e400000) return x;
    id = -1;
  } else {
    x = std::fabs(x);
    if (ix < 0x3ff30000) {
      if (ix < 0x3fe60000) {
        id = 0;
        x = (2.0 * x - 1.0) / (2.0 + x);
      } else {
        id = 1;
        x = (x - 1.0) / (x + 1.0);
      }
    } else {
      if (ix < 0x40038000) {
        id = 2;
        x = (x - 1.5) / (1.0 + 1.5 * x);
      } else {
        id = 3;
        x = -1.0 / x;
      }
    }
  }
  double z = x * x;
  double w = z * z;
  double s1 = z * (kAtanT[0] +
                   w * (kAtanT[2] +
                        w * (kAtanT[4] +
                             w * (kAtanT[6] + w * (kAtanT[8] + w * kAtanT[10])))));
  double s2 = w * (kAtanT[1] +
                   w * (kAtanT[3] +
                        w * (kAtanT[5] + w * (kAtanT[7] + w * kAtanT[9]))));
  if (id < 0) return x - x * (s1 + s2);
  double r = kAtanHi[id] - ((x * (s1 + s2) - kAtanLo[id]) - x);
  return hx < 0 ? -r : r;
}

double acos(double x) {
  // sqrt is correctly rounded by IEEE 754, so this stays deterministic.
  return 2.0 * atan(std::sqrt((1.0 - x) / (1.0 + x)));
}

double cos(double x) {
  double y[2];
  std::int32_t ix = high_word(x) & 0x7fffffff;
  if (ix <= 0x3fe921fb) return kernel_cos(x, 0.0);
  int n = rem_pio2(x, y);
  switch (n & 3) {
    case 0:
      return kernel_cos(y[0], y[1]);
    case 1:
      return -kernel_sin(y[0], y[1], 1);
    case 2:
      return -kernel_cos(y[0], y[1]);
    default:
      return kernel_sin(y[0], y[1], 1);
  }
}

}  // namespace trlg::detmath
