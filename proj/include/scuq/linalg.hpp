#pragma once

// Small dense linear-algebra kernels used by the quadrature and spline
// builders. Problem sizes here are tiny (N <= ~120), so everything is
// plain O(n^3) with partial pivoting.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scuq::linalg {

// Row-major dense matrix, just enough for the solvers below.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
};

// Solves A x = b in place via Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("linalg::solve: dimension mismatch");
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); p = i; }
    }
    if (best == 0.0) throw std::runtime_error("linalg::solve: singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a(i, k) / a(k, k);
      if (m == 0.0) continue;
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// Least squares via normal equations: minimizes ||A x - y||_2.
// Fine for the well-conditioned spline design matrices used here.
inline std::vector<double> lstsq(const Matrix& a, const std::vector<double>& y) {
  const std::size_t m = a.rows(), n = a.cols();
  if (y.size() != m) throw std::invalid_argument("linalg::lstsq: dimension mismatch");
  Matrix ata(n, n);
  std::vector<double> aty(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += a(k, i) * a(k, j);
      ata(i, j) = s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += a(k, i) * y[k];
    aty[i] = s;
  }
  return solve(ata, aty);
}

// Eigenvalues of a symmetric tridiagonal matrix together with the first
// component of each normalized eigenvector (all that Gauss quadrature
// needs). Implicit-shift QL, the classical IMTQLX routine.
//
// diag: d[0..n-1]; sub: e[0..n-2] subdiagonal. On return eigenvalues are
// ascending in `diag` and `first` holds the first eigenvector components.
inline void tridiag_eigen_first(std::vector<double>& diag,
                                std::vector<double> sub,
                                std::vector<double>& first) {
  const std::size_t n = diag.size();
  first.assign(n, 0.0);
  if (n == 0) return;
  first[0] = 1.0;
  if (n == 1) return;
  sub.push_back(0.0);  // e[n-1] sentinel

  const int max_iter = 60;
  for (std::size_t l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(sub[m]) <= 1e-300 + 2.2e-16 * dd) break;
      }
      if (m == l) break;
      if (iter >= max_iter)
        throw std::runtime_error("tridiag_eigen_first: QL failed to converge");
      double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (std::size_t i = m; i-- > l;) {
        double f = s * sub[i];
        const double b = c * sub[i];
        r = std::hypot(f, g);
        sub[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          sub[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        // rotate the tracked first components
        f = first[i + 1];
        first[i + 1] = s * first[i] + c * f;
        first[i] = c * first[i] - s * f;
      }
      if (r == 0.0 && m - l > 1) continue;
      diag[l] -= p;
      sub[l] = g;
      sub[m] = 0.0;
    }
  }
  // sort ascending, carrying the first components along
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    for (std::size_t j = i + 1; j < n; ++j)
      if (diag[j] < diag[k]) k = j;
    if (k != i) {
      std::swap(diag[i], diag[k]);
      std::swap(first[i], first[k]);
    }
  }
}

}  // namespace scuq::linalg
