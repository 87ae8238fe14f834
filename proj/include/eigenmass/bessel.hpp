#pragma once
// Bessel functions of the first kind and their positive zeros, to ~1e-10
// absolute accuracy over m <= 200, x <= 1e4.

namespace emass {

// J_m(x). Ascending series for small x, Miller backward recurrence otherwise.
double bessel_j(int m, double x);

// J_m'(x) via the ladder identities.
double bessel_j_prime(int m, double x);

enum class BesselZeroKind { OfJ, OfJPrime };

// k-th positive zero of J_m (or of J_m'), by sign-change scan + bisection.
double bessel_zero(int m, int k, BesselZeroKind kind);

}  // namespace emass
