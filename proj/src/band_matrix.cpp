#include "eigenmass/band_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "eigenmass/kernels.hpp"

namespace emass {

void BandMatrix::add_sym(std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  if (i - j > bw_) throw std::logic_error("BandMatrix: entry outside band");
  at(i, j) += v;
}

void BandMatrix::matvec(const double* x, double* y) const {
  for (std::size_t i = 0; i < n_; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const double* c = col(j);
    const std::size_t m = std::min(bw_, n_ - 1 - j);
    double acc = c[0] * x[j];
    for (std::size_t r = 1; r <= m; ++r) {
      acc += c[r] * x[j + r];      // row j, col j+r (symmetry)
      y[j + r] += c[r] * x[j];     // row j+r, col j
    }
    y[j] += acc;
  }
}

std::optional<BandLdlt> BandLdlt::factor(const BandMatrix& A, const std::vector<double>& m,
                                         double sigma) {
  BandLdlt f;
  f.n_ = A.size();
  f.bw_ = A.bandwidth();
  const std::size_t ld = f.bw_ + 1;
  f.a_.assign(A.col(0), A.col(0) + f.n_ * ld);
  double scale = 0.0;
  for (std::size_t j = 0; j < f.n_; ++j) {
    f.a_[j * ld] -= sigma * m[j];
    scale = std::max(scale, std::abs(f.a_[j * ld]));
  }
  const double tiny = 1e-14 * (scale > 0.0 ? scale : 1.0);
  std::vector<double> work(f.bw_ + 1);
  for (std::size_t j = 0; j < f.n_; ++j) {
    double* cj = f.a_.data() + j * ld;
    const double d = cj[0];
    if (std::abs(d) < tiny) return std::nullopt;
    if (d < 0.0) ++f.negative_;
    const std::size_t mlen = std::min(f.bw_, f.n_ - 1 - j);
    if (mlen == 0) continue;
    for (std::size_t r = 1; r <= mlen; ++r) work[r] = cj[r];
    // trailing update: col(j+r)[s-r] -= cj[s] * cj[r]/d  for s in [r, mlen]
    for (std::size_t r = 1; r <= mlen; ++r) {
      const double alpha = -work[r] / d;
      kernels::axpy(alpha, work.data() + r, f.a_.data() + (j + r) * ld, mlen - r + 1);
    }
    for (std::size_t r = 1; r <= mlen; ++r) cj[r] = work[r] / d;  // store L
  }
  return f;
}

void BandLdlt::solve(std::vector<double>& b) const {
  const std::size_t ld = bw_ + 1;
  // forward: L z = b
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t mlen = std::min(bw_, n_ - 1 - j);
    if (mlen > 0) kernels::axpy(-b[j], a_.data() + j * ld + 1, b.data() + j + 1, mlen);
  }
  // diagonal
  for (std::size_t j = 0; j < n_; ++j) b[j] /= a_[j * ld];
  // backward: L^T x = z
  for (std::size_t jj = n_; jj-- > 0;) {
    const std::size_t mlen = std::min(bw_, n_ - 1 - jj);
    if (mlen > 0) b[jj] -= kernels::dot(a_.data() + jj * ld + 1, b.data() + jj + 1, mlen);
  }
}

bool tridiag_eigen(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return true;
  e.resize(n, 0.0);
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) return false;
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            double* zz = z->data();
            for (int k = 0; k < n; ++k) {
              f = zz[k * n + i + 1];
              zz[k * n + i + 1] = s * zz[k * n + i] + c * f;
              zz[k * n + i] = c * zz[k * n + i] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  // sort ascending, permuting eigenvector columns alongside
  for (int i = 0; i < n - 1; ++i) {
    int k = i;
    for (int j = i + 1; j < n; ++j)
      if (d[j] < d[k]) k = j;
    if (k != i) {
      std::swap(d[i], d[k]);
      if (z)
        for (int r = 0; r < n; ++r) std::swap((*z)[r * n + i], (*z)[r * n + k]);
    }
  }
  return true;
}

}  // namespace emass
