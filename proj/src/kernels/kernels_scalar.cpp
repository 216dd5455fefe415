// Scalar reference kernels.  These define the semantics; the AVX2 variants
// must match them bit for bit (see tests/test_kernels.cpp).

#include <cmath>
#include <cstddef>

#include "bhg/kernels.hpp"
#include "sincos_core.hpp"

namespace bhg::kernels::detail {

void sincos_batch_scalar(std::span<const double> x, std::span<double> s,
                         std::span<double> c) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const SinCosPair p = sincos_ref(x[i]);
    if (!s.empty()) s[i] = p.s;
    if (!c.empty()) c[i] = p.c;
  }
}

void cospoly_eval_batch_scalar(std::span<const double> coeffs,
                               std::span<const double> x,
                               std::span<double> y) {
  const std::size_t k = coeffs.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = sincos_ref(x[i]).c;
    const double twot = t + t;
    // Clenshaw for sum c_j T_j(t): b_j = c_j + 2t b_{j+1} - b_{j+2}.
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = k; j-- > 0;) {
      const double u = coeffs[j] - b2;
      const double b = std::fma(twot, b1, u);
      b2 = b1;
      b1 = b;
    }
    y[i] = std::fma(t, b1, -b2);
  }
}

Complex2 expsum_scalar(std::span<const double> elements, double t) {
  // Four interleaved accumulators, reduced as (a0+a2) + (a1+a3); the AVX2
  // kernel assigns element i to lane i&3 and reduces the same way.
  double re[4] = {0, 0, 0, 0}, im[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const SinCosPair p = sincos_ref(elements[i] * t);
    re[i & 3] += p.c;
    im[i & 3] += p.s;
  }
  return {(re[0] + re[2]) + (re[1] + re[3]),
          (im[0] + im[2]) + (im[1] + im[3])};
}

}  // namespace bhg::kernels::detail
