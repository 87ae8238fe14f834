#pragma once
// Array kernels for the hot inner loops: quadrature reductions, Lanczos
// vector ops and banded-factorization column updates.  A scalar reference
// implementation always exists; SIMD variants (AVX2 on x86, NEON on arm64)
// are selected once at runtime and must agree with the scalar path up to
// floating-point reassociation.  EIGENMASS_KERNELS=scalar forces the
// reference path.

#include <cstddef>
#include <cstdint>

namespace emass::kernels {

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);
// sum_i w[i]*v[i]*v[i]
double weighted_sumsq(const double* w, const double* v, std::size_t n);
// sum_i w[i]*a[i]*b[i]
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
// sum_i w[i]*v[idx[i]]^2   (gathered quadrature over a node subset)
double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n);
// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

const char* active_backend();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double weighted_sumsq(const double* w, const double* v, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace scalar

#ifdef EIGENMASS_HAVE_AVX2
namespace avx2 {
bool supported();
double dot(const double* a, const double* b, std::size_t n);
double weighted_sumsq(const double* w, const double* v, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

#ifdef EIGENMASS_HAVE_NEON
namespace neon {
bool supported();
double dot(const double* a, const double* b, std::size_t n);
double weighted_sumsq(const double* w, const double* v, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
double gather_weighted_sumsq(const double* w, const double* v, const std::int32_t* idx,
                             std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace emass::kernels
