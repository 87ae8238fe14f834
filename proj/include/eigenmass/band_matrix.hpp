#pragma once
// Symmetric banded matrices with LDL^T factorization (no pivoting; callers
// perturb the shift on pivot breakdown) and inertia counting for spectrum
// slicing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace emass {

class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, std::size_t bandwidth)
      : n_(n), bw_(bandwidth), a_(n * (bandwidth + 1), 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return bw_; }

  // lower-triangle entry (i,j), i >= j, i-j <= bandwidth
  double& at(std::size_t i, std::size_t j) { return a_[j * (bw_ + 1) + (i - j)]; }
  double at(std::size_t i, std::size_t j) const { return a_[j * (bw_ + 1) + (i - j)]; }

  void add_sym(std::size_t i, std::size_t j, double v);  // accepts either order
  void matvec(const double* x, double* y) const;         // y = A x

  const double* col(std::size_t j) const { return a_.data() + j * (bw_ + 1); }
  double* col(std::size_t j) { return a_.data() + j * (bw_ + 1); }

 private:
  std::size_t n_ = 0, bw_ = 0;
  std::vector<double> a_;
};

// LDL^T of (A - sigma * diag(m)).  Fails on a tiny pivot.
class BandLdlt {
 public:
  static std::optional<BandLdlt> factor(const BandMatrix& A, const std::vector<double>& m,
                                        double sigma);
  void solve(std::vector<double>& b) const;  // in place
  int negative_pivots() const { return negative_; }

 private:
  std::size_t n_ = 0, bw_ = 0;
  std::vector<double> a_;  // L (unit diagonal implicit) and D on the diagonal slot
  int negative_ = 0;
};

// Symmetric tridiagonal eigensolver (QL with implicit shifts).
// diag/off are destroyed; eigenvalues returned ascending in diag, and z
// (if non-null, size n*n row-major, initialized to identity by the callee)
// accumulates eigenvectors in columns.
bool tridiag_eigen(std::vector<double>& diag, std::vector<double>& off,
                   std::vector<double>* z);

}  // namespace emass
