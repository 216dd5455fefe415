#pragma once
// Shared sin/cos core used by both the scalar reference kernels and the AVX2
// kernels.  The AVX2 implementation mirrors this operation sequence
// instruction for instruction (same constants, same FMA placement), which is
// what makes the two ISAs bit-identical on a given input.
//
// Reduction: n = rint(x * 2/pi), y = ((x - n*PIO2_HI) - n*PIO2_LO).
//   PIO2_HI holds the first 33 bits of pi/2, so n*PIO2_HI is exact for
//   |n| < 2^19 and x - n*PIO2_HI is exact by Sterbenz.  Residual error
//   <= |n| * ulp(PIO2_LO) + rounding of the final subtraction < 1e-16.
//
// Polynomials on |y| <= pi/4 + eps: Taylor series, sin through y^17
// (truncation y^19/19! < 7e-20), cos through y^16 (y^18/18! < 2e-18).

#include <cmath>
#include <cstdint>

namespace bhg::kernels::detail {

inline constexpr double kInvPio2 = 6.36619772367581382433e-01;  // 2/pi
inline constexpr double kPio2Hi = 1.57079632673412561417e+00;   // 33 bits
inline constexpr double kPio2Lo = 6.07710050650619224932e-11;   // pi/2 - hi

// 1/k! rounded to double by the compiler (exact IEEE division).
inline constexpr double S1 = -1.0 / 6.0;
inline constexpr double S2 = 1.0 / 120.0;
inline constexpr double S3 = -1.0 / 5040.0;
inline constexpr double S4 = 1.0 / 362880.0;
inline constexpr double S5 = -1.0 / 39916800.0;
inline constexpr double S6 = 1.0 / 6227020800.0;
inline constexpr double S7 = -1.0 / 1307674368000.0;
inline constexpr double S8 = 1.0 / 355687428096000.0;

inline constexpr double C1 = -1.0 / 2.0;
inline constexpr double C2 = 1.0 / 24.0;
inline constexpr double C3 = -1.0 / 720.0;
inline constexpr double C4 = 1.0 / 40320.0;
inline constexpr double C5 = -1.0 / 3628800.0;
inline constexpr double C6 = 1.0 / 479001600.0;
inline constexpr double C7 = -1.0 / 87178291200.0;
inline constexpr double C8 = 1.0 / 20922789888000.0;

// sin(y) for |y| <= pi/4 + eps, z = y*y.
inline double poly_sin(double y, double z) {
  double p = S8;
  p = std::fma(p, z, S7);
  p = std::fma(p, z, S6);
  p = std::fma(p, z, S5);
  p = std::fma(p, z, S4);
  p = std::fma(p, z, S3);
  p = std::fma(p, z, S2);
  p = std::fma(p, z, S1);
  return std::fma(y * z, p, y);
}

// cos(y) for |y| <= pi/4 + eps, z = y*y.
inline double poly_cos(double z) {
  double p = C8;
  p = std::fma(p, z, C7);
  p = std::fma(p, z, C6);
  p = std::fma(p, z, C5);
  p = std::fma(p, z, C4);
  p = std::fma(p, z, C3);
  p = std::fma(p, z, C2);
  p = std::fma(p, z, C1);
  return std::fma(p, z, 1.0);
}

struct SinCosPair {
  double s, c;
};

// Core path; caller guarantees |x| <= kMaxFastArg and x finite.
inline SinCosPair sincos_fast(double x) {
  const double fn = std::nearbyint(x * kInvPio2);
  const double r = std::fma(-fn, kPio2Hi, x);
  const double w = fn * kPio2Lo;
  const double y = r - w;
  const double z = y * y;
  const double ps = poly_sin(y, z);
  const double pc = poly_cos(z);
  const std::int64_t q = static_cast<std::int64_t>(fn) & 3;
  const bool swap = q & 1;
  const double s0 = swap ? pc : ps;
  const double c0 = swap ? ps : pc;
  return {(q & 2) ? -s0 : s0, ((q + 1) & 2) ? -c0 : c0};
}

inline bool needs_libm(double x) {
  return !(std::fabs(x) <= 524288.0);  // also catches NaN/Inf
}

inline SinCosPair sincos_ref(double x) {
  if (needs_libm(x)) return {std::sin(x), std::cos(x)};
  return sincos_fast(x);
}

}  // namespace bhg::kernels::detail
