#pragma once

// CWENO-Z interpolation of order 7 on point values: four cubic candidates
// on 4-node substencils and one sextic optimal polynomial on the full
// 7-node stencil, blended with Z-type nonlinear weights.
//
// The domain is partitioned into cells around each node (midpoint to
// midpoint). Every candidate of a cell interpolates that cell's node, so
// the blended polynomial is exact at every node regardless of the
// weights. Boundary cells fall back to the nearest one-sided 7-node
// stencil with the substencils that still contain the cell's node.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "scuq/linalg.hpp"
#include "scuq/random_space.hpp"

namespace scuq {

namespace detail {

// Jiang-Shu style indicator of a polynomial P given in the local power
// basis around `center`: sum over l >= 1 of H^(2l-1) * int_a^b (P^(l))^2 dx
// with H = b - a. Zero iff P is constant on the interval.
inline double poly_smoothness(const std::vector<double>& coeffs, double center, double a,
                              double b) {
  const double big_h = b - a;
  const int deg = static_cast<int>(coeffs.size()) - 1;
  double total = 0.0;
  std::vector<double> d(coeffs);
  for (int l = 1; l <= deg; ++l) {
    // differentiate once
    for (std::size_t j = 0; j + 1 < d.size(); ++j)
      d[j] = d[j + 1] * static_cast<double>(j + 1);
    d.pop_back();
    // square and integrate over [a - center, b - center]
    const double u0 = a - center, u1 = b - center;
    double integral = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        const int p = static_cast<int>(i + j) + 1;
        integral += d[i] * d[j] * (std::pow(u1, p) - std::pow(u0, p)) / p;
      }
    total += std::pow(big_h, 2 * l - 1) * integral;
  }
  return total;
}

// Interpolating polynomial through (x_k, f_k) in the scaled local basis
// v = (x - center) / scale, returned as power-basis coefficients in v.
inline std::vector<double> fit_poly(const double* x, const double* f, std::size_t n,
                                    double center, double scale) {
  linalg::Matrix a(n, n);
  std::vector<double> rhs(f, f + n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = (x[i] - center) / scale;
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = p;
      p *= v;
    }
  }
  return linalg::solve(a, rhs);
}

}  // namespace detail

struct CwenoOptions {
  double central_linear_weight = 0.5;  // d0 for the sextic part
  double epsilon = 1e-6;               // Z-weight regularization
};

class CwenoSurrogate {
 public:
  struct Cell {
    double left = 0.0, right = 0.0;  // cell bounds
    double center = 0.0, scale = 1.0;
    std::vector<double> coeffs;  // blended polynomial, power basis in v
  };

  CwenoSurrogate(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  double lo() const { return cells_.front().left; }
  double hi() const { return cells_.back().right; }
  const std::vector<Cell>& cells() const { return cells_; }

  double operator()(double x) const {
    const double slack = 1e-12 * (hi() - lo());
    if (x < lo() - slack || x > hi() + slack)
      throw std::out_of_range("CwenoSurrogate: evaluation outside the node range");
    x = std::clamp(x, lo(), hi());
    std::size_t lo_i = 0, hi_i = cells_.size() - 1;
    while (lo_i < hi_i) {
      const std::size_t mid = (lo_i + hi_i) / 2;
      if (x < cells_[mid].right)
        hi_i = mid;
      else
        lo_i = mid + 1;
    }
    const Cell& c = cells_[lo_i];
    const double v = (x - c.center) / c.scale;
    double acc = 0.0;
    for (std::size_t j = c.coeffs.size(); j-- > 0;) acc = acc * v + c.coeffs[j];
    return acc;
  }

 private:
  std::vector<Cell> cells_;
};

inline CwenoSurrogate cweno_build(const CollocationSet& colloc,
                                  const CwenoOptions& opts = {}) {
  colloc.validate();
  const std::size_t n = colloc.size();
  if (n < 7) throw std::invalid_argument("cweno_build: need N >= 7");
  const auto& x = colloc.nodes;
  const auto& f = colloc.values;

  std::vector<CwenoSurrogate::Cell> cells(n);
  for (std::size_t m = 0; m < n; ++m) {
    CwenoSurrogate::Cell cell;
    cell.left = (m == 0) ? x.front() : 0.5 * (x[m - 1] + x[m]);
    cell.right = (m + 1 == n) ? x.back() : 0.5 * (x[m] + x[m + 1]);
    cell.center = x[m];

    const std::size_t s = std::min(m > 3 ? m - 3 : 0, n - 7);
    cell.scale = x[s + 6] - x[s];

    // sextic on the full stencil
    const auto p_opt = detail::fit_poly(&x[s], &f[s], 7, cell.center, cell.scale);

    // cubic substencils that contain node m
    std::vector<std::vector<double>> cubics;
    for (std::size_t q = std::max(s, m >= 3 ? m - 3 : 0); q <= std::min(s + 3, m); ++q)
      cubics.push_back(detail::fit_poly(&x[q], &f[q], 4, cell.center, cell.scale));
    const std::size_t k = cubics.size();

    const double d0 = opts.central_linear_weight;
    const double di = (1.0 - d0) / static_cast<double>(k);

    // central candidate P0 = (P_opt - sum d_i P_i) / d0
    std::vector<double> p0(7, 0.0);
    for (std::size_t j = 0; j < 7; ++j) p0[j] = p_opt[j];
    for (const auto& c : cubics)
      for (std::size_t j = 0; j < c.size(); ++j) p0[j] -= di * c[j];
    for (double& v : p0) v /= d0;

    // smoothness indicators on the evaluation cell
    std::vector<double> beta(k + 1);
    beta[0] = detail::poly_smoothness(p0, cell.center, cell.left, cell.right);
    double beta_mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      beta[i + 1] = detail::poly_smoothness(cubics[i], cell.center, cell.left, cell.right);
      beta_mean += beta[i + 1];
    }
    beta_mean /= static_cast<double>(k);
    const double tau = std::abs(beta[0] - beta_mean);

    std::vector<double> w(k + 1);
    w[0] = d0 * (1.0 + tau / (beta[0] + opts.epsilon));
    double wsum = w[0];
    for (std::size_t i = 0; i < k; ++i) {
      w[i + 1] = di * (1.0 + tau / (beta[i + 1] + opts.epsilon));
      wsum += w[i + 1];
    }
    for (double& v : w) v /= wsum;

    cell.coeffs.assign(7, 0.0);
    for (std::size_t j = 0; j < 7; ++j) cell.coeffs[j] = w[0] * p0[j];
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cubics[i].size(); ++j)
        cell.coeffs[j] += w[i + 1] * cubics[i][j];

    cells[m] = std::move(cell);
  }
  return CwenoSurrogate(std::move(cells));
}

// Indicator of a polynomial given in the local power basis around
// `center`, on the interval [a, b]. Exposed for diagnostics and tests.
inline double smoothness_indicator(const std::vector<double>& coeffs, double center, double a,
                                   double b) {
  return detail::poly_smoothness(coeffs, center, a, b);
}

}  // namespace scuq
