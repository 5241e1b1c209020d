#pragma once

// Spline surrogates over the random space:
//  - interpolating cubic B-spline (not-a-knot ends),
//  - least-squares approximating cubic B-spline on uniform knots,
//  - shape-preserving rational spline with per-interval tension.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scuq/linalg.hpp"
#include "scuq/random_space.hpp"

namespace scuq {

namespace detail {

// Cox-de Boor value of the j-th B-spline of given degree on `knots` at x.
// The very last knot is treated as inside the final span.
inline double bspline_basis(const std::vector<double>& knots, int degree, int j, double x) {
  if (degree == 0) {
    const bool last = (j + 2 == static_cast<int>(knots.size())) ||
                      (knots[j + 1] == knots.back());
    if (last && x == knots.back()) return knots[j] <= x ? 1.0 : 0.0;
    return (knots[j] <= x && x < knots[j + 1]) ? 1.0 : 0.0;
  }
  double acc = 0.0;
  const double dl = knots[j + degree] - knots[j];
  if (dl > 0.0) acc += (x - knots[j]) / dl * bspline_basis(knots, degree - 1, j, x);
  const double dr = knots[j + degree + 1] - knots[j + 1];
  if (dr > 0.0)
    acc += (knots[j + degree + 1] - x) / dr * bspline_basis(knots, degree - 1, j + 1, x);
  return acc;
}

}  // namespace detail

class CubicBSpline {
 public:
  enum class Mode { Interpolating, Approximating };

  CubicBSpline(std::vector<double> knots, std::vector<double> coeffs, Mode mode)
      : knots_(std::move(knots)), coeffs_(std::move(coeffs)), mode_(mode) {
    if (knots_.size() != coeffs_.size() + 4)
      throw std::invalid_argument("CubicBSpline: knot/coefficient count mismatch");
  }

  Mode mode() const { return mode_; }
  std::size_t control_count() const { return coeffs_.size(); }
  double lo() const { return knots_.front(); }
  double hi() const { return knots_.back(); }

  double operator()(double x) const {
    const double slack = 1e-12 * (hi() - lo());
    if (x < lo() - slack || x > hi() + slack)
      throw std::out_of_range("CubicBSpline: evaluation outside the node range");
    x = std::clamp(x, lo(), hi());
    // de Boor on the span containing x
    const int m = static_cast<int>(knots_.size());
    int span = static_cast<int>(std::upper_bound(knots_.begin() + 3, knots_.end() - 4, x) -
                                knots_.begin()) - 1;
    span = std::clamp(span, 3, m - 5);
    std::array<double, 4> d;
    for (int i = 0; i < 4; ++i) d[i] = coeffs_[span - 3 + i];
    for (int r = 1; r <= 3; ++r) {
      for (int i = 3; i >= r; --i) {
        const int k = span - 3 + i;
        const double denom = knots_[k + 4 - r] - knots_[k];
        const double alpha = denom > 0.0 ? (x - knots_[k]) / denom : 0.0;
        d[i] = (1.0 - alpha) * d[i - 1] + alpha * d[i];
      }
    }
    return d[3];
  }

 private:
  std::vector<double> knots_;
  std::vector<double> coeffs_;
  Mode mode_;
};

// Interpolating cubic B-spline with not-a-knot end conditions: the knot
// vector drops the second and next-to-last data sites, which makes the
// collocation system square (N unknowns) and reproduces cubics exactly.
inline CubicBSpline bspline_interp_fit(const CollocationSet& colloc) {
  colloc.validate();
  const std::size_t n = colloc.size();
  if (n < 4) throw std::invalid_argument("bspline_interp_fit: need N >= 4");
  const auto& x = colloc.nodes;
  std::vector<double> knots;
  knots.insert(knots.end(), 4, x.front());
  for (std::size_t i = 2; i + 2 < n; ++i) knots.push_back(x[i]);
  knots.insert(knots.end(), 4, x.back());

  linalg::Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = detail::bspline_basis(knots, 3, static_cast<int>(j), x[i]);
  auto coeffs = linalg::solve(a, colloc.values);
  return CubicBSpline(std::move(knots), std::move(coeffs), CubicBSpline::Mode::Interpolating);
}

// Least-squares cubic B-spline on uniformly spaced knots. The control
// count grows as ceil(N/2) for small N but is capped, which keeps the
// strong smoothing behaviour for large N.
inline CubicBSpline bspline_approx_fit(const CollocationSet& colloc,
                                       std::size_t control_count = 0) {
  colloc.validate();
  const std::size_t n = colloc.size();
  if (n < 6) throw std::invalid_argument("bspline_approx_fit: need N >= 6");
  std::size_t k = control_count;
  if (k == 0) k = std::max<std::size_t>(4, std::min<std::size_t>((n + 1) / 2, 8));
  if (k < 4) throw std::invalid_argument("bspline_approx_fit: need >= 4 control points");
  if (k >= n)
    throw std::invalid_argument(
        "bspline_approx_fit: control count must be < N (strict smoothing)");

  const double lo = colloc.nodes.front(), hi = colloc.nodes.back();
  std::vector<double> knots;
  knots.insert(knots.end(), 4, lo);
  for (std::size_t i = 1; i + 3 <= k - 1; ++i)
    knots.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 3));
  knots.insert(knots.end(), 4, hi);

  linalg::Matrix a(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      a(i, j) = detail::bspline_basis(knots, 3, static_cast<int>(j), colloc.nodes[i]);
  auto coeffs = linalg::lstsq(a, colloc.values);
  return CubicBSpline(std::move(knots), std::move(coeffs), CubicBSpline::Mode::Approximating);
}

// ---------------------------------------------------------------------------
// Shape-preserving rational spline.
//
// Each interval carries a rational segment
//   S(t) = n(t) / q(t),  q(t) = 1 + (r - 3) t (1 - t),  t in [0, 1],
// with r >= 3 a local tension parameter. r = 3 recovers the cubic Hermite
// segment; raising r pulls the segment toward the chord. Endpoint slopes
// come from the Butland harmonic mean, so monotone data keeps monotone
// slopes. Tension is chosen as the smallest value satisfying the local
// shape constraints (monotonicity / positivity / convexity of the data),
// then verified on a dense grid with escalation as a backstop.

class ShapePreservingSpline {
 public:
  struct Segment {
    double x0 = 0.0, h = 1.0;
    std::array<double, 5> num{};  // numerator, power basis in t (deg <= 3 used)
    std::array<double, 3> den{};  // denominator, power basis in t
  };

  ShapePreservingSpline(std::vector<double> nodes, std::vector<Segment> segments)
      : nodes_(std::move(nodes)), segments_(std::move(segments)) {}

  double lo() const { return nodes_.front(); }
  double hi() const { return nodes_.back(); }

  double operator()(double x) const {
    const double slack = 1e-12 * (hi() - lo());
    if (x < lo() - slack || x > hi() + slack)
      throw std::out_of_range("ShapePreservingSpline: evaluation outside the node range");
    x = std::clamp(x, lo(), hi());
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(nodes_.begin(), nodes_.end() - 1, x) - nodes_.begin());
    i = i > 0 ? i - 1 : 0;
    i = std::min(i, segments_.size() - 1);
    const Segment& s = segments_[i];
    const double t = std::clamp((x - s.x0) / s.h, 0.0, 1.0);
    const double num = ((s.num[3] * t + s.num[2]) * t + s.num[1]) * t + s.num[0];
    const double den = (s.den[2] * t + s.den[1]) * t + s.den[0];
    return num / den;
  }

 private:
  std::vector<double> nodes_;
  std::vector<Segment> segments_;
};

namespace detail {

inline ShapePreservingSpline::Segment sp_segment(double x0, double h, double f0, double f1,
                                                 double d0, double d1, double r) {
  ShapePreservingSpline::Segment s;
  s.x0 = x0;
  s.h = h;
  // Bernstein coefficients of the numerator cubic
  const double b0 = f0;
  const double b1 = r * f0 + h * d0;
  const double b2 = r * f1 - h * d1;
  const double b3 = f1;
  // (1-t)^3, 3? -- the segment uses the non-normalized Bernstein-like form
  //   n(t) = b0 (1-t)^3 + b1 t (1-t)^2 + b2 t^2 (1-t) + b3 t^3
  s.num[0] = b0;
  s.num[1] = -3.0 * b0 + b1;
  s.num[2] = 3.0 * b0 - 2.0 * b1 + b2;
  s.num[3] = -b0 + b1 - b2 + b3;
  // q(t) = 1 + (r-3) t (1-t)
  s.den[0] = 1.0;
  s.den[1] = r - 3.0;
  s.den[2] = -(r - 3.0);
  return s;
}

// Sign checks for a segment on a dense t-grid. W = n' q - n q' carries the
// sign of S'; W' q - 2 W q' carries the sign of S''.
struct SegmentShape {
  bool monotone_up = false, monotone_down = false;
  bool positive = false, negative = false;
  bool convex = false, concave = false;
};

inline bool sp_segment_ok(const ShapePreservingSpline::Segment& s, const SegmentShape& want,
                          double fscale) {
  auto num = [&](double t) {
    return ((s.num[3] * t + s.num[2]) * t + s.num[1]) * t + s.num[0];
  };
  auto dnum = [&](double t) { return (3.0 * s.num[3] * t + 2.0 * s.num[2]) * t + s.num[1]; };
  auto d2num = [&](double t) { return 6.0 * s.num[3] * t + 2.0 * s.num[2]; };
  auto den = [&](double t) { return (s.den[2] * t + s.den[1]) * t + s.den[0]; };
  auto dden = [&](double t) { return 2.0 * s.den[2] * t + s.den[1]; };

  const double tol = 1e-11 * std::max(1.0, fscale);
  const int grid = 257;
  for (int g = 0; g <= grid; ++g) {
    const double t = static_cast<double>(g) / grid;
    const double n = num(t), q = den(t);
    if (q <= 0.0) return false;
    const double w = dnum(t) * q - n * dden(t);
    if (want.monotone_up && w < -tol) return false;
    if (want.monotone_down && w > tol) return false;
    if (want.positive && n < -tol) return false;
    if (want.negative && n > tol) return false;
    const double w2 = (d2num(t) * q - n * 2.0 * s.den[2]) * q - 2.0 * w * dden(t);
    if (want.convex && w2 < -1e-7 * std::max(1.0, fscale)) return false;
    if (want.concave && w2 > 1e-7 * std::max(1.0, fscale)) return false;
  }
  return true;
}

}  // namespace detail

inline ShapePreservingSpline sp_spline_fit(const CollocationSet& colloc) {
  colloc.validate();
  const std::size_t n = colloc.size();
  if (n < 3) throw std::invalid_argument("sp_spline_fit: need N >= 3");
  const auto& x = colloc.nodes;
  const auto& f = colloc.values;

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (f[i + 1] - f[i]) / h[i];
  }

  // Butland harmonic-mean slopes; zero at local extrema, clipped one-sided
  // estimates at the ends (Fritsch-Carlson style).
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] > 0.0)
      d[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
  }
  auto end_slope = [](double del_near, double del_far, double h_near, double h_far) {
    double s = ((2.0 * h_near + h_far) * del_near - h_near * del_far) / (h_near + h_far);
    if (s * del_near <= 0.0) return 0.0;
    if (std::abs(s) > 3.0 * std::abs(del_near)) s = 3.0 * del_near;
    return s;
  };
  d[0] = end_slope(delta[0], n > 2 ? delta[1] : delta[0], h[0], n > 2 ? h[1] : h[0]);
  d[n - 1] = end_slope(delta[n - 2], n > 2 ? delta[n - 3] : delta[n - 2], h[n - 2],
                       n > 2 ? h[n - 3] : h[n - 2]);

  double fscale = 0.0;
  for (double v : f) fscale = std::max(fscale, std::abs(v));

  std::vector<ShapePreservingSpline::Segment> segs(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    detail::SegmentShape want;
    double r = 3.0;
    if (delta[i] == 0.0 && d[i] == 0.0 && d[i + 1] == 0.0) {
      // flat stretch: segment reduces to the constant
    } else if (delta[i] != 0.0 && d[i] * delta[i] >= 0.0 && d[i + 1] * delta[i] >= 0.0) {
      // monotone data: r >= 1 + (d_i + d_{i+1}) / delta keeps S' one-signed
      want.monotone_up = delta[i] > 0.0;
      want.monotone_down = delta[i] < 0.0;
      r = std::max(r, 1.0 + (d[i] + d[i + 1]) / delta[i]);
    }
    if (f[i] > 0.0 && f[i + 1] > 0.0) {
      want.positive = true;
      if (f[i] != 0.0) r = std::max(r, -h[i] * d[i] / f[i]);
      if (f[i + 1] != 0.0) r = std::max(r, h[i] * d[i + 1] / f[i + 1]);
    } else if (f[i] < 0.0 && f[i + 1] < 0.0) {
      want.negative = true;
      if (f[i] != 0.0) r = std::max(r, -h[i] * d[i] / f[i]);
      if (f[i + 1] != 0.0) r = std::max(r, h[i] * d[i + 1] / f[i + 1]);
    }
    // convex/concave data: slopes bracket the chord slope
    if (d[i] <= delta[i] && delta[i] <= d[i + 1] && d[i] < d[i + 1]) want.convex = true;
    if (d[i] >= delta[i] && delta[i] >= d[i + 1] && d[i] > d[i + 1]) want.concave = true;

    auto seg = detail::sp_segment(x[i], h[i], f[i], f[i + 1], d[i], d[i + 1], r);
    // escalation backstop: tension -> infinity tends to the chord, which
    // satisfies every constraint implied by the data
    for (int iter = 0; iter < 60 && !detail::sp_segment_ok(seg, want, fscale); ++iter) {
      r = 2.0 * r + 1.0;
      seg = detail::sp_segment(x[i], h[i], f[i], f[i + 1], d[i], d[i + 1], r);
    }
    segs[i] = seg;
  }
  return ShapePreservingSpline(x, std::move(segs));
}

}  // namespace scuq
