#pragma once
// Small numerics toolbox: 3-vectors, Gauss-Legendre rules, least-squares
// line fits and a deterministic xorshift generator.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace emass {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
  bool operator==(const Vec3&) const = default;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

struct GaussRule {
  std::vector<double> x;  // nodes on [-1,1]
  std::vector<double> w;
};

// Gauss-Legendre rule of order n (nodes by Newton iteration, cached).
const GaussRule& gauss_rule(int n);

// integral of f over [a,b] with an n-point Gauss rule
double integrate(const std::function<double(double)>& f, double a, double b, int n);

// least-squares line y = a + b*x; returns {intercept, slope, rms residual}
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// slope of log|e| against log(h) (convergence-order estimation)
double fit_order(const std::vector<double>& h, const std::vector<double>& err);

// deterministic xorshift64* stream, for solver start vectors and jitter
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }
  // uniform in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // uniform in [-1,1)
  double sym() { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace emass
