// AVX2 variants. Compiled with -mavx2 -mfma; only ever called after the
// dispatcher has confirmed CPU support. Accumulating kernels widen each
// 8-float lane group to 4x2 doubles so results track the scalar reference
// to rounding error even for long buffers.

#include "din/kernels/kernels.hpp"

#if defined(DIN_HAVE_AVX2)

#include <immintrin.h>

namespace din::kernels::avx2 {

void scale(float* dst, const float* src, std::size_t n, float gain) {
  const __m256 g = _mm256_set1_ps(gain);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i, _mm256_mul_ps(_mm256_loadu_ps(src + i), g));
  for (; i < n; ++i) dst[i] = src[i] * gain;
}

void mix(float* dst, const float* a, float ga, const float* b, float gb, std::size_t n) {
  const __m256 vga = _mm256_set1_ps(ga);
  const __m256 vgb = _mm256_set1_ps(gb);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_mul_ps(_mm256_loadu_ps(a + i), vga);
    const __m256 vb = _mm256_mul_ps(_mm256_loadu_ps(b + i), vgb);
    _mm256_storeu_ps(dst + i, _mm256_add_ps(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * ga + b[i] * gb;
}

void multiply(float* dst, const float* a, const float* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(dst + i,
                     _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

namespace {

inline double hsum_pd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

double sum_squares(const float* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    const __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
    const __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
    acc0 = _mm256_fmadd_pd(lo, lo, acc0);
    acc1 = _mm256_fmadd_pd(hi, hi, acc1);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double v = static_cast<double>(x[i]);
    acc += v * v;
  }
  return acc;
}

double dot(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256 vb = _mm256_loadu_ps(b + i);
    const __m256d alo = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
    const __m256d ahi = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
    const __m256d blo = _mm256_cvtps_pd(_mm256_castps256_ps128(vb));
    const __m256d bhi = _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1));
    acc0 = _mm256_fmadd_pd(alo, blo, acc0);
    acc1 = _mm256_fmadd_pd(ahi, bhi, acc1);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i)
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

float peak_abs(const float* x, std::size_t n) {
  const __m256 sign_mask = _mm256_set1_ps(-0.0f);
  __m256 vmax = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    vmax = _mm256_max_ps(vmax, _mm256_andnot_ps(sign_mask, _mm256_loadu_ps(x + i)));
  alignas(32) float lanes[8];
  _mm256_store_ps(lanes, vmax);
  float peak = 0.0f;
  for (float lane : lanes)
    if (lane > peak) peak = lane;
  for (; i < n; ++i) {
    const float v = x[i] < 0.0f ? -x[i] : x[i];
    if (v > peak) peak = v;
  }
  return peak;
}

} // namespace din::kernels::avx2

#endif // DIN_HAVE_AVX2
