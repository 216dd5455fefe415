#pragma once
// Batch trigonometric kernels: the arithmetic inner loop under every
// certified minimization and exponential-sum evaluation in this project.
//
// Two implementations of each kernel are provided: a scalar reference and an
// AVX2+FMA variant, selected once at startup by CPU probe (override with
// BHG_KERNEL=scalar|avx2).  Both follow the identical operation sequence
// (same reduction constants, same polynomials, same FMA placement), so on a
// given machine they produce bit-identical results; the equivalence tests
// assert exactly that.
//
// Accuracy contract (absolute error, both ISAs):
//   |sincos - true|  <=  kSinCosAbsErr               for any finite x
//   |cospoly - true| <=  cospoly_abs_error(coeffs)   for any finite x
//
// Arguments with |x| > kMaxFastArg take a per-element libm fallback, again
// identical across ISAs.

#include <cstddef>
#include <span>
#include <string>

namespace bhg::kernels {

// Largest |x| handled by the in-house argument reduction.  The reduction
// computes n = round(x * 2/pi) and needs n * PIO2_HI exact in double:
// PIO2_HI carries 33 significant bits, so |n| < 2^19 keeps the product
// within 53 bits.  2^19 * pi/2 > 5e5 > this threshold.
inline constexpr double kMaxFastArg = 524288.0;  // 2^19

// Proven bound: <= 4.7e-17 Taylor truncation + ~2.5e-16 Horner/reduction
// rounding; quoted with more than 2x headroom.  Verified against libm in
// tests/test_kernels.cpp.
inline constexpr double kSinCosAbsErr = 1e-15;

enum class Isa { scalar, avx2 };

Isa active_isa();                 // resolved once per process
bool avx2_supported();            // raw CPU probe
std::string isa_name(Isa isa);

// s[i] = sin(x[i]), c[i] = cos(x[i]); either output span may be empty to
// skip that component.  Spans must match x.size() when present.
void sincos_batch(std::span<const double> x, std::span<double> s,
                  std::span<double> c);

// y[i] = sum_{j=1..K} coeffs[j-1] * cos(j * x[i]), evaluated by Clenshaw
// recurrence on t = cos(x[i]) (one cosine per point).
void cospoly_eval_batch(std::span<const double> coeffs,
                        std::span<const double> x, std::span<double> y);

// Static absolute error bound for cospoly_eval_batch at any x.  The cos(x)
// error enters through d/dt sum c_j T_j(t), bounded by sum j^2 |c_j|.
double cospoly_abs_error(std::span<const double> coeffs);

// Sum over a in elements of e^{i a t}; returns (re, im).  Used by the
// exponential-sum checks; elements are integers stored as doubles.
struct Complex2 {
  double re, im;
};
Complex2 expsum(std::span<const double> elements, double t);

namespace detail {
// Direct entry points for the equivalence tests.
void sincos_batch_scalar(std::span<const double> x, std::span<double> s,
                         std::span<double> c);
void sincos_batch_avx2(std::span<const double> x, std::span<double> s,
                       std::span<double> c);
void cospoly_eval_batch_scalar(std::span<const double> coeffs,
                               std::span<const double> x,
                               std::span<double> y);
void cospoly_eval_batch_avx2(std::span<const double> coeffs,
                             std::span<const double> x, std::span<double> y);
Complex2 expsum_scalar(std::span<const double> elements, double t);
Complex2 expsum_avx2(std::span<const double> elements, double t);
}  // namespace detail

}  // namespace bhg::kernels
