// AVX2+FMA kernels.  Same operation sequence as the scalar reference:
// _mm256_round_pd <-> nearbyint, vfnmadd/vfmadd <-> std::fma, so results are
// bit-identical per lane.  Blocks containing a lane that needs the libm
// fallback (|x| > kMaxFastArg or non-finite) are processed with the scalar
// core instead, which keeps mixed blocks exact as well.
//
// This translation unit is compiled with -mavx2 -mfma; nothing here may be
// called unless the CPU probe succeeded.

#include "bhg/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "sincos_core.hpp"

namespace bhg::kernels::detail {
namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

struct VSinCos {
  __m256d s, c;
};

// Caller guarantees every lane satisfies |x| <= kMaxFastArg.
inline VSinCos sincos4(__m256d x) {
  const __m256d invpio2 = _mm256_set1_pd(kInvPio2);
  const __m256d hi = _mm256_set1_pd(kPio2Hi);
  const __m256d lo = _mm256_set1_pd(kPio2Lo);

  const __m256d fn = _mm256_round_pd(
      _mm256_mul_pd(x, invpio2), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d r = _mm256_fnmadd_pd(fn, hi, x);
  const __m256d w = _mm256_mul_pd(fn, lo);
  const __m256d y = _mm256_sub_pd(r, w);
  const __m256d z = _mm256_mul_pd(y, y);

  __m256d p = _mm256_set1_pd(S8);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S7));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S6));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S5));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S4));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S3));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S2));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(S1));
  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(y, z), p, y);

  __m256d q = _mm256_set1_pd(C8);
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C7));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C6));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C5));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C4));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C3));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C2));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(C1));
  const __m256d pc = _mm256_fmadd_pd(q, z, _mm256_set1_pd(1.0));

  const __m128i qi = _mm_and_si128(_mm256_cvtpd_epi32(fn), _mm_set1_epi32(3));
  const __m256d swap = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(
      _mm_cmpgt_epi32(_mm_and_si128(qi, _mm_set1_epi32(1)), _mm_setzero_si128())));
  const __m256d sneg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(
      _mm_cmpgt_epi32(_mm_and_si128(qi, _mm_set1_epi32(2)), _mm_setzero_si128())));
  const __m256d cneg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpgt_epi32(
      _mm_and_si128(_mm_add_epi32(qi, _mm_set1_epi32(1)), _mm_set1_epi32(2)),
      _mm_setzero_si128())));

  const __m256d s0 = _mm256_blendv_pd(ps, pc, swap);
  const __m256d c0 = _mm256_blendv_pd(pc, ps, swap);
  return {_mm256_xor_pd(s0, _mm256_and_pd(kSignMask, sneg)),
          _mm256_xor_pd(c0, _mm256_and_pd(kSignMask, cneg))};
}

// True when every lane is finite with |x| <= kMaxFastArg.
inline bool all_fast(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(kSignMask, x);
  const __m256d ok = _mm256_cmp_pd(ax, _mm256_set1_pd(kMaxFastArg), _CMP_LE_OQ);
  return _mm256_movemask_pd(ok) == 0xf;
}

}  // namespace

void sincos_batch_avx2(std::span<const double> x, std::span<double> s,
                       std::span<double> c) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    if (all_fast(v)) {
      const VSinCos p = sincos4(v);
      if (!s.empty()) _mm256_storeu_pd(s.data() + i, p.s);
      if (!c.empty()) _mm256_storeu_pd(c.data() + i, p.c);
    } else {
      for (std::size_t k = i; k < i + 4; ++k) {
        const SinCosPair p = sincos_ref(x[k]);
        if (!s.empty()) s[k] = p.s;
        if (!c.empty()) c[k] = p.c;
      }
    }
  }
  for (; i < n; ++i) {
    const SinCosPair p = sincos_ref(x[i]);
    if (!s.empty()) s[i] = p.s;
    if (!c.empty()) c[i] = p.c;
  }
}

void cospoly_eval_batch_avx2(std::span<const double> coeffs,
                             std::span<const double> x, std::span<double> y) {
  const std::size_t k = coeffs.size();
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    __m256d t;
    if (all_fast(v)) {
      t = sincos4(v).c;
    } else {
      alignas(32) double tc[4];
      for (int l = 0; l < 4; ++l) tc[l] = sincos_ref(x[i + l]).c;
      t = _mm256_load_pd(tc);
    }
    const __m256d twot = _mm256_add_pd(t, t);
    __m256d b1 = _mm256_setzero_pd(), b2 = _mm256_setzero_pd();
    for (std::size_t j = k; j-- > 0;) {
      const __m256d u = _mm256_sub_pd(_mm256_set1_pd(coeffs[j]), b2);
      const __m256d b = _mm256_fmadd_pd(twot, b1, u);
      b2 = b1;
      b1 = b;
    }
    _mm256_storeu_pd(y.data() + i,
                     _mm256_fmadd_pd(t, b1, _mm256_xor_pd(b2, kSignMask)));
  }
  if (i < n) {
    cospoly_eval_batch_scalar(coeffs, x.subspan(i), y.subspan(i));
  }
}

Complex2 expsum_avx2(std::span<const double> elements, double t) {
  const std::size_t n = elements.size();
  const __m256d vt = _mm256_set1_pd(t);
  __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(elements.data() + i);
    const __m256d arg = _mm256_mul_pd(a, vt);
    if (all_fast(arg)) {
      const VSinCos p = sincos4(arg);
      re = _mm256_add_pd(re, p.c);
      im = _mm256_add_pd(im, p.s);
    } else {
      alignas(32) double cs[4], ss[4];
      for (int l = 0; l < 4; ++l) {
        const SinCosPair p = sincos_ref(elements[i + l] * t);
        cs[l] = p.c;
        ss[l] = p.s;
      }
      re = _mm256_add_pd(re, _mm256_load_pd(cs));
      im = _mm256_add_pd(im, _mm256_load_pd(ss));
    }
  }
  alignas(32) double lr[4], li[4];
  _mm256_store_pd(lr, re);
  _mm256_store_pd(li, im);
  for (; i < n; ++i) {
    const SinCosPair p = sincos_ref(elements[i] * t);
    lr[i & 3] += p.c;
    li[i & 3] += p.s;
  }
  return {(lr[0] + lr[2]) + (lr[1] + lr[3]), (li[0] + li[2]) + (li[1] + li[3])};
}

}  // namespace bhg::kernels::detail

#else  // non-x86: never selected by the dispatcher

#include <cstdlib>

namespace bhg::kernels::detail {
void sincos_batch_avx2(std::span<const double>, std::span<double>,
                       std::span<double>) {
  std::abort();
}
void cospoly_eval_batch_avx2(std::span<const double>, std::span<const double>,
                             std::span<double>) {
  std::abort();
}
Complex2 expsum_avx2(std::span<const double>, double) { std::abort(); }
}  // namespace bhg::kernels::detail

#endif
