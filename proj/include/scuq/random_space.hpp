#pragma once

// The 1-D random variable xi, reproducible sampling, and collocation node
// sets. All sequences are generated by mt19937_64 with explicit
// bit-transforms (no std::*_distribution), so a (seed, M) pair gives the
// same stream on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scuq {

struct Interval {
  double lo, hi;
};

class RandomVariable {
 public:
  enum class Kind { Uniform, Normal };

  static RandomVariable uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("RandomVariable: need a < b");
    RandomVariable rv;
    rv.kind_ = Kind::Uniform;
    rv.a_ = a;
    rv.b_ = b;
    return rv;
  }

  // Normal law truncated to [mu - k*sigma, mu + k*sigma]; the experiments
  // use k = 6, where the truncated mass is below 1e-8.
  static RandomVariable normal(double mu, double sigma, double halfwidth_sigmas = 6.0) {
    if (!(sigma > 0.0)) throw std::invalid_argument("RandomVariable: need sigma > 0");
    if (!(halfwidth_sigmas > 0.0))
      throw std::invalid_argument("RandomVariable: need positive truncation halfwidth");
    RandomVariable rv;
    rv.kind_ = Kind::Normal;
    rv.mu_ = mu;
    rv.sigma_ = sigma;
    rv.k_ = halfwidth_sigmas;
    return rv;
  }

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double truncation_halfwidth() const { return k_; }

  Interval support() const {
    if (kind_ == Kind::Uniform) return {a_, b_};
    return {mu_ - k_ * sigma_, mu_ + k_ * sigma_};
  }

 private:
  Kind kind_ = Kind::Uniform;
  double a_ = -1.0, b_ = 1.0;
  double mu_ = 0.0, sigma_ = 1.0, k_ = 6.0;
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits of a draw.
inline double u01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller; consumes exactly two draws per call and returns one deviate,
// keeping the stream position independent of caller state.
inline double standard_normal(std::mt19937_64& gen) {
  const double u1 = 1.0 - u01(gen);  // (0, 1]
  const double u2 = u01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace detail

struct SampleSet {
  std::vector<double> values;
  std::uint64_t seed = 0;
  RandomVariable law = RandomVariable::uniform(-1.0, 1.0);
};

// M i.i.d. draws from the law. Normal draws outside the truncated support
// are redrawn, so the result always lies inside support().
inline SampleSet sample(const RandomVariable& rv, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample: need M >= 1");
  SampleSet out;
  out.seed = seed;
  out.law = rv;
  out.values.reserve(m);
  std::mt19937_64 gen(seed);
  if (rv.kind() == RandomVariable::Kind::Uniform) {
    const double a = rv.a(), w = rv.b() - rv.a();
    for (std::size_t i = 0; i < m; ++i) out.values.push_back(a + w * detail::u01(gen));
  } else {
    const auto [lo, hi] = rv.support();
    for (std::size_t i = 0; i < m; ++i) {
      double x;
      do {
        x = rv.mu() + rv.sigma() * detail::standard_normal(gen);
      } while (x < lo || x > hi);
      out.values.push_back(x);
    }
  }
  return out;
}

// N equally spaced nodes spanning the support, endpoints included.
inline std::vector<double> uniform_nodes(const RandomVariable& rv, std::size_t n) {
  if (n < 2) throw std::invalid_argument("uniform_nodes: need N >= 2");
  const auto [lo, hi] = rv.support();
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i)
    nodes[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  nodes.front() = lo;
  nodes.back() = hi;
  return nodes;
}

// Ordered collocation nodes with their solution values.
struct CollocationSet {
  std::vector<double> nodes;
  std::vector<double> values;

  CollocationSet() = default;
  CollocationSet(std::vector<double> n, std::vector<double> v)
      : nodes(std::move(n)), values(std::move(v)) {
    validate();
  }

  std::size_t size() const { return nodes.size(); }

  void validate() const {
    if (nodes.size() != values.size())
      throw std::invalid_argument("CollocationSet: nodes/values length mismatch");
    if (nodes.size() < 2) throw std::invalid_argument("CollocationSet: need N >= 2");
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (!(nodes[i] > nodes[i - 1]))
        throw std::invalid_argument("CollocationSet: nodes must be strictly increasing");
  }
};

}  // namespace scuq
