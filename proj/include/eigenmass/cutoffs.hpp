#pragma once
// The odd monotone cutoff chi (s/2 on [-1,1], constant ±1 outside ±3) and
// its derivative bump gamma, built from the exp(-1/t) smoothstep so that
// chi(3) = 1 holds exactly by the step's symmetry.

namespace emass {

class CutoffFamily {
 public:
  CutoffFamily();

  double chi(double s) const;
  double gamma(double s) const;         // chi'
  double gamma_prime(double s) const;   // chi''
  double gamma_second(double s) const;  // chi'''

  double chi_scaled(double s, double mu) const { return chi(s / mu); }
  double gamma_scaled(double s, double mu) const { return gamma(s / mu); }

  // tensor factor of the psi cutoff: 1 on |s| <= 1/3, supported |s| <= 1
  double bump(double s) const { return 2.0 * gamma(3.0 * s); }
  double bump_d1(double s) const { return 6.0 * gamma_prime(3.0 * s); }
  double bump_d2(double s) const { return 18.0 * gamma_second(3.0 * s); }

 private:
  // cumulative integral of gamma over [1, 3], tabulated at init
  static constexpr int kTable = 2048;
  double table_[kTable + 1];
  double integral_panel(double a, double b) const;
};

const CutoffFamily& build_cutoffs();

}  // namespace emass
