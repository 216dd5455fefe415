// Runtime ISA dispatch for the batch kernels.

#include "bhg/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace bhg::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa resolve_isa() {
  if (const char* env = std::getenv("BHG_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Isa::avx2;
  }
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = resolve_isa();
  return isa;
}

std::string isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void sincos_batch(std::span<const double> x, std::span<double> s,
                  std::span<double> c) {
  if (active_isa() == Isa::avx2)
    detail::sincos_batch_avx2(x, s, c);
  else
    detail::sincos_batch_scalar(x, s, c);
}

void cospoly_eval_batch(std::span<const double> coeffs,
                        std::span<const double> x, std::span<double> y) {
  if (coeffs.empty()) {
    for (auto& v : y) v = 0.0;
    return;
  }
  if (active_isa() == Isa::avx2)
    detail::cospoly_eval_batch_avx2(coeffs, x, y);
  else
    detail::cospoly_eval_batch_scalar(coeffs, x, y);
}

Complex2 expsum(std::span<const double> elements, double t) {
  if (active_isa() == Isa::avx2) return detail::expsum_avx2(elements, t);
  return detail::expsum_scalar(elements, t);
}

double cospoly_abs_error(std::span<const double> coeffs) {
  // Clenshaw roundoff: |b_j| <= B = sum |c_j| (j+1); ~2 roundings per step.
  // cos(x) error enters through |d/dt sum c_j T_j(t)| <= sum j^2 |c_j|.
  constexpr double eps = std::numeric_limits<double>::epsilon() / 2;  // 2^-53
  double b = 0.0, d2 = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = std::fabs(coeffs[j]);
    b += a * static_cast<double>(j + 2);
    d2 += a * static_cast<double>((j + 1) * (j + 1));
  }
  const double k = static_cast<double>(coeffs.size());
  return eps * (12.0 * k + 4.0) * b + d2 * kSinCosAbsErr;
}

}  // namespace bhg::kernels
