#pragma once

// Histogram PDF reconstruction, moment estimation, Monte Carlo reference
// generation, L1 PDF error and power-law convergence fits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "scuq/moments.hpp"
#include "scuq/random_space.hpp"

namespace scuq {

struct EmpiricalPdf {
  double u_min = 0.0, u_max = 0.0;
  std::size_t n_bins = 0;
  std::vector<double> densities;  // normalized against the native width
  std::size_t n_samples = 0;

  double native_width() const {
    return n_bins > 0 ? (u_max - u_min) / static_cast<double>(n_bins) : 0.0;
  }
  // the estimator's bin-width convention: range / (n_bins + 1)
  double extended_width() const {
    return (u_max - u_min) / static_cast<double>(n_bins + 1);
  }
  double midpoint(std::size_t i) const {
    return u_min + (static_cast<double>(i) + 0.5) * native_width();
  }
};

// Quartiles with linear interpolation between order statistics.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

// Automatic bin count: the smaller of the Sturges and Freedman-Diaconis
// widths wins; zero IQR falls back to Sturges, zero range gives one bin.
inline std::size_t auto_bins(const std::vector<double>& data) {
  if (data.empty()) throw std::invalid_argument("auto_bins: empty data");
  std::vector<double> sorted(data);
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  if (range <= 0.0) return 1;
  const double n = static_cast<double>(data.size());
  const double sturges_w = range / (std::log2(n) + 1.0);
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double fd_w = 2.0 * iqr * std::pow(n, -1.0 / 3.0);
  const double width = (iqr > 0.0) ? std::min(sturges_w, fd_w) : sturges_w;
  const double count = std::ceil(range / width);
  // heavy-tailed data can make the FD width collapse (tiny IQR, wide
  // range); cap the count so the histogram stays allocatable
  constexpr double cap = 65536.0;
  return static_cast<std::size_t>(std::min(count, cap));
}

// Equal-width histogram over [min, max]; the rightmost bin is closed.
inline EmpiricalPdf build_pdf(const std::vector<double>& data, std::size_t n_bins) {
  if (data.empty()) throw std::invalid_argument("build_pdf: empty data");
  if (n_bins < 1) throw std::invalid_argument("build_pdf: need n_bins >= 1");
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  EmpiricalPdf pdf;
  pdf.u_min = *mn;
  pdf.u_max = *mx;
  pdf.n_bins = n_bins;
  pdf.n_samples = data.size();
  std::vector<std::size_t> counts(n_bins, 0);
  const double range = pdf.u_max - pdf.u_min;
  if (range <= 0.0) {
    counts[0] = data.size();
    pdf.u_max = pdf.u_min;  // degenerate: single point mass
    pdf.densities.assign(n_bins, 0.0);
    pdf.densities[0] = 1.0;  // unit mass convention for zero-width support
    return pdf;
  }
  const double inv_w = static_cast<double>(n_bins) / range;
  for (double v : data) {
    auto i = static_cast<std::size_t>((v - pdf.u_min) * inv_w);
    if (i >= n_bins) i = n_bins - 1;
    ++counts[i];
  }
  pdf.densities.resize(n_bins);
  const double w = range / static_cast<double>(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i)
    pdf.densities[i] =
        static_cast<double>(counts[i]) / (static_cast<double>(data.size()) * w);
  return pdf;
}

// Histogram on a prescribed grid (the reference's width and alignment),
// extended left/right as needed so no sample mass is dropped.
inline EmpiricalPdf build_pdf_on_grid(const std::vector<double>& data, double origin,
                                      double width, std::size_t min_bins) {
  if (data.empty()) throw std::invalid_argument("build_pdf_on_grid: empty data");
  if (!(width > 0.0)) throw std::invalid_argument("build_pdf_on_grid: need width > 0");
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  auto bin_of = [&](double v) {
    return static_cast<long long>(std::floor((v - origin) / width));
  };
  long long lo_bin = std::min<long long>(bin_of(*mn), 0);
  long long hi_bin = std::max<long long>(bin_of(*mx), static_cast<long long>(min_bins) - 1);
  EmpiricalPdf pdf;
  pdf.u_min = origin + static_cast<double>(lo_bin) * width;
  pdf.n_bins = static_cast<std::size_t>(hi_bin - lo_bin + 1);
  pdf.u_max = pdf.u_min + static_cast<double>(pdf.n_bins) * width;
  pdf.n_samples = data.size();
  std::vector<std::size_t> counts(pdf.n_bins, 0);
  for (double v : data) {
    long long i = bin_of(v) - lo_bin;
    if (i < 0) i = 0;
    if (i >= static_cast<long long>(pdf.n_bins)) i = static_cast<long long>(pdf.n_bins) - 1;
    ++counts[static_cast<std::size_t>(i)];
  }
  pdf.densities.resize(pdf.n_bins);
  for (std::size_t i = 0; i < pdf.n_bins; ++i)
    pdf.densities[i] =
        static_cast<double>(counts[i]) / (static_cast<double>(data.size()) * width);
  return pdf;
}

enum class BinWidthConvention { Extended, Native };

// Mean/variance sums over the histogram. The default uses the extended
// bin width Delta U = range / (n_bins + 1); the Native switch uses the
// exact bin width instead.
inline Moments moments_from_pdf(const EmpiricalPdf& pdf,
                                BinWidthConvention conv = BinWidthConvention::Extended) {
  const double du =
      conv == BinWidthConvention::Extended ? pdf.extended_width() : pdf.native_width();
  Moments m;
  if (pdf.n_bins == 0) return m;
  if (pdf.u_max == pdf.u_min) {  // point mass
    m.mean = pdf.u_min;
    m.variance = 0.0;
    return m;
  }
  for (std::size_t i = 0; i < pdf.n_bins; ++i)
    m.mean += pdf.densities[i] * pdf.midpoint(i) * du;
  for (std::size_t i = 0; i < pdf.n_bins; ++i) {
    const double d = pdf.midpoint(i) - m.mean;
    m.variance += pdf.densities[i] * d * d * du;
  }
  return m;
}

// Monte Carlo reference: closed-form U at M samples, auto-binned.
inline EmpiricalPdf mc_reference(const std::function<double(double)>& generator,
                                 const RandomVariable& rv, std::size_t m,
                                 std::uint64_t seed) {
  const auto samples = sample(rv, m, seed);
  std::vector<double> u(samples.values.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = generator(samples.values[i]);
  return build_pdf(u, auto_bins(u));
}

// L1 distance between two histograms on the same grid (equal width,
// aligned origins). Bins present in only one PDF contribute their full
// density mass.
inline double l1_pdf_error(const EmpiricalPdf& ref, const EmpiricalPdf& cand) {
  const double w = ref.native_width();
  if (!(w > 0.0) || !(cand.native_width() > 0.0))
    throw std::invalid_argument("l1_pdf_error: degenerate binning");
  if (std::abs(cand.native_width() - w) > 1e-9 * w)
    throw std::invalid_argument("l1_pdf_error: bin widths differ");
  const double offset = (cand.u_min - ref.u_min) / w;
  const long long shift = static_cast<long long>(std::llround(offset));
  if (std::abs(offset - static_cast<double>(shift)) > 1e-6)
    throw std::invalid_argument("l1_pdf_error: bin edges are not aligned");
  const long long lo = std::min<long long>(0, shift);
  const long long hi = std::max<long long>(static_cast<long long>(ref.n_bins),
                                           shift + static_cast<long long>(cand.n_bins));
  double err = 0.0;
  for (long long i = lo; i < hi; ++i) {
    const double pr = (i >= 0 && i < static_cast<long long>(ref.n_bins))
                          ? ref.densities[static_cast<std::size_t>(i)]
                          : 0.0;
    const long long j = i - shift;
    const double pc = (j >= 0 && j < static_cast<long long>(cand.n_bins))
                          ? cand.densities[static_cast<std::size_t>(j)]
                          : 0.0;
    err += std::abs(pr - pc) * w;
  }
  return err;
}

// Bin-index-wise L1 distance between two histograms with the same bin
// count, each built over its own sample range, measured with the
// reference's bin width. This is the estimator's published error metric:
// "the same number of bins" is shared, the ranges are not.
inline double l1_pdf_error_indexed(const EmpiricalPdf& ref, const EmpiricalPdf& cand) {
  if (ref.n_bins != cand.n_bins)
    throw std::invalid_argument("l1_pdf_error_indexed: bin counts differ");
  const double w = ref.native_width();
  if (!(w > 0.0)) throw std::invalid_argument("l1_pdf_error_indexed: degenerate binning");
  double err = 0.0;
  for (std::size_t i = 0; i < ref.n_bins; ++i)
    err += std::abs(ref.densities[i] - cand.densities[i]) * w;
  return err;
}

struct PowerLawFit {
  double amplitude = 0.0;  // K
  double exponent = 0.0;   // k in K * N^(-k)
  double residual = 0.0;   // RMS of the log-space fit
};

// Ordinary least squares of log(error) on log(N): error ~ K N^(-k).
inline PowerLawFit power_law_fit(const std::vector<double>& ns,
                                 const std::vector<double>& errors) {
  if (ns.size() != errors.size() || ns.size() < 2)
    throw std::invalid_argument("power_law_fit: need >= 2 matching points");
  for (double e : errors)
    if (!(e > 0.0)) throw std::invalid_argument("power_law_fit: errors must be positive");
  const double n = static_cast<double>(ns.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(ns[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("power_law_fit: degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  PowerLawFit fit;
  fit.exponent = -slope;
  fit.amplitude = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double r = std::log(errors[i]) - (intercept + slope * std::log(ns[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace scuq
