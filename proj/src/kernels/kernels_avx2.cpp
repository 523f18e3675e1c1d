// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after cpu_supports_avx2() returned
// true (see dispatch.cpp).

#include "volfit/kernels.hpp"

#if !defined(__AVX2__) || !defined(__FMA__)
#error kernels_avx2.cpp must be compiled with -mavx2 -mfma
#endif

#include <immintrin.h>

namespace volfit::kernels {
namespace {

inline double reduce_add_f64x4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  std::size_t n16 = n - (n & 15);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n16; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  std::size_t i = n16;
  std::size_t n4 = n - (n & 3);
  for (; i < n4; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  acc0 = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  double result = reduce_add_f64x4(acc0);
  for (; i < n; ++i) result += a[i] * b[i];
  return result;
}

double sum_avx2(const double* a, std::size_t n) {
  std::size_t n8 = n - (n & 7);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n8; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
  }
  double result = reduce_add_f64x4(_mm256_add_pd(acc0, acc1));
  for (std::size_t i = n8; i < n; ++i) result += a[i];
  return result;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t n8 = n - (n & 7);
  for (std::size_t i = 0; i < n8; i += 8) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (std::size_t i = n8; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double alpha, const double* x, double* out, std::size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  std::size_t n4 = n - (n & 3);
  for (std::size_t i = 0; i < n4; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (std::size_t i = n4; i < n; ++i) out[i] = alpha * x[i];
}

}  // namespace

const Ops* avx2_ops_impl();  // referenced by dispatch.cpp

const Ops* avx2_ops_impl() {
  static const Ops ops{dot_avx2, sum_avx2, axpy_avx2, scale_avx2};
  return &ops;
}

}  // namespace volfit::kernels
