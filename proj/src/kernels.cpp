#include "eigenmass/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace emass::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0;
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
  }
  if (i < n) s0 += a[i] * b[i];
  return s0 + s1;
}

double weighted_sumsq(const double* w, const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i] * v[i];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
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
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace scalar

namespace {

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*weighted_sumsq)(const double*, const double*, std::size_t);
  double (*weighted_dot)(const double*, const double*, const double*, std::size_t);
  double (*gather_weighted_sumsq)(const double*, const double*, const std::int32_t*,
                                  std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  const char* name;
};

constexpr Vtable kScalar = {scalar::dot, scalar::weighted_sumsq, scalar::weighted_dot,
                            scalar::gather_weighted_sumsq, scalar::axpy, "scalar"};

Vtable g_active = kScalar;
std::once_flag g_once;

void select_backend() {
  const char* force = std::getenv("EIGENMASS_KERNELS");
  if (force && std::strcmp(force, "scalar") == 0) return;
#ifdef EIGENMASS_HAVE_AVX2
  if ((!force || std::strcmp(force, "avx2") == 0) && avx2::supported()) {
    g_active = {avx2::dot, avx2::weighted_sumsq, avx2::weighted_dot,
                avx2::gather_weighted_sumsq, avx2::axpy, "avx2"};
    return;
  }
#endif
#ifdef EIGENMASS_HAVE_NEON
  if ((!force || std::strcmp(force, "neon") == 0) && neon::supported()) {
    g_active = {neon::dot, neon::weighted_sumsq, neon::weighted_dot,
                neon::gather_weighted_sumsq, neon::axpy, "neon"};
    return;
  }
#endif
}

const Vtable& active() {
  std::call_once(g_once, select_backend);
  return g_active;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }

double weighted_sumsq(const double* w, const double* v, std::size_t n) {
  return active().weighted_sumsq(w, v, n);
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  return active().weighted_dot(w, a, b, n);
}

double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n) {
  return active().gather_weighted_sumsq(w, v, idx, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }

const char* active_backend() { return active().name; }

}  // namespace emass::kernels
