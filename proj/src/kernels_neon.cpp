#include "eigenmass/kernels.hpp"

#ifdef EIGENMASS_HAVE_NEON

#include <arm_neon.h>

namespace emass::kernels::neon {

bool supported() { return true; }

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double weighted_sumsq(const double* w, const double* v, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t x = vld1q_f64(v + i);
    acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(w + i), x), x);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * v[i] * v[i];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t p = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vfmaq_f64(acc, vld1q_f64(w + i), p);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = v[idx[i]];
    s += w[i] * x * x;
  }
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace emass::kernels::neon

#endif  // EIGENMASS_HAVE_NEON
