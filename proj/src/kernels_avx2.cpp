#include "eigenmass/kernels.hpp"

#ifdef EIGENMASS_HAVE_AVX2

#include <immintrin.h>

namespace emass::kernels::avx2 {

bool supported() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

namespace {
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double weighted_sumsq(const double* w, const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(v + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), x), x, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * v[i] * v[i];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), p, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i ix = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    __m256d x = _mm256_i32gather_pd(v, ix, 8);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), x), x, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double x = v[idx[i]];
    s += w[i] * x * x;
  }
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace emass::kernels::avx2

#endif  // EIGENMASS_HAVE_AVX2
