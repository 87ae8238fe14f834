#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "eigenmass/kernels.hpp"
#include "eigenmass/quadrature.hpp"

using namespace emass;

namespace {

struct Data {
  std::vector<double> w, a, b;
  std::vector<std::int32_t> idx;
};

Data make_test_data(std::size_t n, std::uint64_t seed) {
  Data d;
  Rng rng(seed);
  d.w.resize(n);
  d.a.resize(n);
  d.b.resize(n);
  d.idx.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.w[i] = rng.uniform();
    d.a[i] = rng.sym();
    d.b[i] = rng.sym();
    d.idx[i] = static_cast<std::int32_t>(rng.next() % n);
  }
  return d;
}

}  // namespace

TEST_CASE("scalar kernels match a plain loop") {
  const Data d = make_test_data(257, 7);
  double dot_ref = 0.0, wss_ref = 0.0, wd_ref = 0.0, gws_ref = 0.0;
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    dot_ref += d.a[i] * d.b[i];
    wss_ref += d.w[i] * d.a[i] * d.a[i];
    wd_ref += d.w[i] * d.a[i] * d.b[i];
    const double x = d.a[d.idx[i]];
    gws_ref += d.w[i] * x * x;
  }
  CHECK(kernels::scalar::dot(d.a.data(), d.b.data(), d.a.size()) ==
        doctest::Approx(dot_ref).epsilon(1e-13));
  CHECK(kernels::scalar::weighted_sumsq(d.w.data(), d.a.data(), d.a.size()) ==
        doctest::Approx(wss_ref).epsilon(1e-13));
  CHECK(kernels::scalar::weighted_dot(d.w.data(), d.a.data(), d.b.data(), d.a.size()) ==
        doctest::Approx(wd_ref).epsilon(1e-13));
  CHECK(kernels::scalar::gather_weighted_sumsq(d.w.data(), d.a.data(), d.idx.data(),
                                               d.idx.size()) ==
        doctest::Approx(gws_ref).epsilon(1e-13));
}

#ifdef EIGENMASS_HAVE_AVX2
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::avx2::supported()) {
    MESSAGE("avx2 unavailable at runtime; skipping");
    return;
  }
  // odd lengths exercise the tail loops
  for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 129u, 1001u}) {
    const Data d = make_test_data(n, 1000 + n);
    CHECK(kernels::avx2::dot(d.a.data(), d.b.data(), n) ==
          doctest::Approx(kernels::scalar::dot(d.a.data(), d.b.data(), n)).epsilon(1e-12));
    CHECK(kernels::avx2::weighted_sumsq(d.w.data(), d.a.data(), n) ==
          doctest::Approx(kernels::scalar::weighted_sumsq(d.w.data(), d.a.data(), n))
              .epsilon(1e-12));
    CHECK(kernels::avx2::weighted_dot(d.w.data(), d.a.data(), d.b.data(), n) ==
          doctest::Approx(kernels::scalar::weighted_dot(d.w.data(), d.a.data(), d.b.data(), n))
              .epsilon(1e-12));
    CHECK(kernels::avx2::gather_weighted_sumsq(d.w.data(), d.a.data(), d.idx.data(), n) ==
          doctest::Approx(
              kernels::scalar::gather_weighted_sumsq(d.w.data(), d.a.data(), d.idx.data(), n))
              .epsilon(1e-12));
    std::vector<double> y1 = d.b, y2 = d.b;
    kernels::scalar::axpy(0.37, d.a.data(), y1.data(), n);
    kernels::avx2::axpy(0.37, d.a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
  }
}
#endif

#ifdef EIGENMASS_HAVE_NEON
TEST_CASE("neon kernels agree with the scalar reference") {
  for (std::size_t n : {1u, 3u, 64u, 129u}) {
    const Data d = make_test_data(n, 2000 + n);
    CHECK(kernels::neon::dot(d.a.data(), d.b.data(), n) ==
          doctest::Approx(kernels::scalar::dot(d.a.data(), d.b.data(), n)).epsilon(1e-12));
    CHECK(kernels::neon::weighted_sumsq(d.w.data(), d.a.data(), n) ==
          doctest::Approx(kernels::scalar::weighted_sumsq(d.w.data(), d.a.data(), n))
              .epsilon(1e-12));
  }
}
#endif

TEST_CASE("dispatch reports a backend") {
  const char* b = kernels::active_backend();
  CHECK(b != nullptr);
  MESSAGE("active kernel backend: ", b);
  // the dispatched entry point must agree with the scalar reference
  const Data d = make_test_data(513, 42);
  CHECK(kernels::dot(d.a.data(), d.b.data(), d.a.size()) ==
        doctest::Approx(kernels::scalar::dot(d.a.data(), d.b.data(), d.a.size()))
            .epsilon(1e-12));
}
