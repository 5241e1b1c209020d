#pragma once

// Uniform surrogate contract shared by the five methods, plus the
// field-level pipeline: per spatial cell, build a surrogate in xi, sample
// it, histogram the results and estimate moments.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "scuq/cweno.hpp"
#include "scuq/gpc.hpp"
#include "scuq/random_space.hpp"
#include "scuq/splines.hpp"
#include "scuq/statistics.hpp"

namespace scuq {

enum class SurrogateMethod { Gpc, BsplineInterp, BsplineApprox, SpSpline, Cweno };

inline const char* method_name(SurrogateMethod m) {
  switch (m) {
    case SurrogateMethod::Gpc: return "gpc";
    case SurrogateMethod::BsplineInterp: return "bspline-interp";
    case SurrogateMethod::BsplineApprox: return "bspline-approx";
    case SurrogateMethod::SpSpline: return "sp-spline";
    case SurrogateMethod::Cweno: return "cweno";
  }
  return "?";
}

inline SurrogateMethod parse_method(const std::string& s) {
  if (s == "gpc") return SurrogateMethod::Gpc;
  if (s == "bspline-interp") return SurrogateMethod::BsplineInterp;
  if (s == "bspline-approx") return SurrogateMethod::BsplineApprox;
  if (s == "sp-spline") return SurrogateMethod::SpSpline;
  if (s == "cweno") return SurrogateMethod::Cweno;
  throw std::invalid_argument("unknown surrogate method: " + s);
}

inline std::size_t method_min_nodes(SurrogateMethod m) {
  switch (m) {
    case SurrogateMethod::Gpc: return 1;
    case SurrogateMethod::BsplineInterp: return 4;
    case SurrogateMethod::BsplineApprox: return 6;
    case SurrogateMethod::SpSpline: return 3;
    case SurrogateMethod::Cweno: return 7;
  }
  return 2;
}

// A built 1-D map xi -> U. Implementations are immutable; evaluation is
// pure and concurrently callable.
class Surrogate {
 public:
  virtual ~Surrogate() = default;
  virtual double operator()(double xi) const = 0;
  virtual SurrogateMethod method() const = 0;
};

namespace detail {

class GpcSurrogate final : public Surrogate {
 public:
  explicit GpcSurrogate(GpcExpansion exp) : exp_(std::move(exp)) {}
  double operator()(double xi) const override { return gpc_eval(exp_, xi); }
  SurrogateMethod method() const override { return SurrogateMethod::Gpc; }
  const GpcExpansion& expansion() const { return exp_; }

 private:
  GpcExpansion exp_;
};

class BsplineSurrogate final : public Surrogate {
 public:
  BsplineSurrogate(CubicBSpline s, SurrogateMethod m) : s_(std::move(s)), m_(m) {}
  double operator()(double xi) const override { return s_(xi); }
  SurrogateMethod method() const override { return m_; }

 private:
  CubicBSpline s_;
  SurrogateMethod m_;
};

class SpSurrogate final : public Surrogate {
 public:
  explicit SpSurrogate(ShapePreservingSpline s) : s_(std::move(s)) {}
  double operator()(double xi) const override { return s_(xi); }
  SurrogateMethod method() const override { return SurrogateMethod::SpSpline; }

 private:
  ShapePreservingSpline s_;
};

class CwenoBlendSurrogate final : public Surrogate {
 public:
  explicit CwenoBlendSurrogate(CwenoSurrogate s) : s_(std::move(s)) {}
  double operator()(double xi) const override { return s_(xi); }
  SurrogateMethod method() const override { return SurrogateMethod::Cweno; }

 private:
  CwenoSurrogate s_;
};

}  // namespace detail

struct SurrogateOptions {
  CwenoOptions cweno;
};

// Dispatch to the method builders. For gPC the collocation nodes must be
// the matching quadrature nodes.
inline std::unique_ptr<Surrogate> build_surrogate(SurrogateMethod method,
                                                  const CollocationSet& colloc,
                                                  const RandomVariable& rv,
                                                  const SurrogateOptions& opts = {}) {
  colloc.validate();
  if (colloc.size() < method_min_nodes(method))
    throw std::invalid_argument(std::string("build_surrogate(") + method_name(method) +
                                "): needs at least " +
                                std::to_string(method_min_nodes(method)) + " nodes");
  switch (method) {
    case SurrogateMethod::Gpc: {
      const auto family = rv.kind() == RandomVariable::Kind::Uniform ? PolyFamily::Legendre
                                                                     : PolyFamily::Hermite;
      const auto rule = gauss_rule(family, colloc.size(), rv);
      const double span =
          std::max(1e-300, std::abs(rule.nodes.back() - rule.nodes.front()));
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        if (std::abs(colloc.nodes[i] - rule.nodes[i]) > 1e-12 * span)
          throw std::invalid_argument(
              "build_surrogate(gpc): collocation nodes must be the quadrature nodes");
      return std::make_unique<detail::GpcSurrogate>(gpc_fit(colloc, rule));
    }
    case SurrogateMethod::BsplineInterp:
      return std::make_unique<detail::BsplineSurrogate>(bspline_interp_fit(colloc),
                                                        SurrogateMethod::BsplineInterp);
    case SurrogateMethod::BsplineApprox:
      return std::make_unique<detail::BsplineSurrogate>(bspline_approx_fit(colloc),
                                                        SurrogateMethod::BsplineApprox);
    case SurrogateMethod::SpSpline:
      return std::make_unique<detail::SpSurrogate>(sp_spline_fit(colloc));
    case SurrogateMethod::Cweno:
      return std::make_unique<detail::CwenoBlendSurrogate>(cweno_build(colloc, opts.cweno));
  }
  throw std::logic_error("build_surrogate: unreachable");
}

inline std::vector<double> sample_surrogate(const Surrogate& s, const SampleSet& samples) {
  std::vector<double> out(samples.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s(samples.values[i]);
  return out;
}

// Deterministic PDE solutions over (x, xi): one value per (xi node, cell).
struct SolutionField {
  std::vector<double> xi_nodes;                // N collocation nodes
  std::vector<std::vector<double>> values;     // [node][cell]
  std::vector<double> x_centers;               // spatial cell centers
};

struct FieldStatistics {
  std::vector<double> x_centers;
  std::vector<double> mean, stddev;
  std::vector<EmpiricalPdf> pdfs;  // one per spatial cell
};

// Per spatial cell: build surrogate, sample it at the shared xi samples,
// histogram, take moments.
inline FieldStatistics field_pipeline(const SolutionField& field, SurrogateMethod method,
                                      const RandomVariable& rv, const SampleSet& samples,
                                      BinWidthConvention conv = BinWidthConvention::Extended,
                                      const SurrogateOptions& opts = {}) {
  if (field.values.size() != field.xi_nodes.size())
    throw std::invalid_argument("field_pipeline: node/value layer mismatch");
  const std::size_t n_cells = field.x_centers.size();
  FieldStatistics out;
  out.x_centers = field.x_centers;
  out.mean.resize(n_cells);
  out.stddev.resize(n_cells);
  out.pdfs.resize(n_cells);
  std::vector<double> u(field.xi_nodes.size());
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    for (std::size_t n = 0; n < field.xi_nodes.size(); ++n) u[n] = field.values[n][cell];
    const auto surrogate = build_surrogate(method, CollocationSet(field.xi_nodes, u), rv, opts);
    const auto vals = sample_surrogate(*surrogate, samples);
    auto pdf = build_pdf(vals, auto_bins(vals));
    const auto m = moments_from_pdf(pdf, conv);
    out.mean[cell] = m.mean;
    out.stddev[cell] = std::sqrt(std::max(0.0, m.variance));
    out.pdfs[cell] = std::move(pdf);
  }
  return out;
}

}  // namespace scuq
