#pragma once

// Gauss quadrature and generalized polynomial chaos in one random
// dimension. Bases are orthonormal with respect to the probability law of
// xi, so the mean is c0 and the variance is the tail sum of squared
// coefficients.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scuq/linalg.hpp"
#include "scuq/moments.hpp"
#include "scuq/random_space.hpp"

namespace scuq {

enum class PolyFamily { Legendre, Hermite };

namespace detail {

// Three-term recurrence coefficient beta_k for the orthonormal family
// under the *probability* normalization (beta_0 = 1).
inline double recurrence_beta(PolyFamily family, std::size_t k) {
  if (k == 0) return 1.0;
  if (family == PolyFamily::Legendre) {
    const double kk = static_cast<double>(k);
    return kk * kk / (4.0 * kk * kk - 1.0);
  }
  return static_cast<double>(k);  // probabilists' Hermite
}

// Orthonormal basis values psi_0..psi_{n-1} at the standard variable z
// (z in [-1,1] for Legendre, unit normal for Hermite).
inline void eval_basis(PolyFamily family, double z, std::vector<double>& psi) {
  const std::size_t n = psi.size();
  if (n == 0) return;
  psi[0] = 1.0;
  if (n == 1) return;
  double pm1 = 0.0, p = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double bk = std::sqrt(recurrence_beta(family, k));
    const double bk1 = std::sqrt(recurrence_beta(family, k + 1));
    const double pnext = (z * p - (k > 0 ? bk : 0.0) * pm1) / bk1;
    pm1 = p;
    p = pnext;
    psi[k + 1] = p;
  }
}

struct AffineMap {
  double center = 0.0, scale = 1.0;  // z = (xi - center) / scale
  double to_standard(double xi) const { return (xi - center) / scale; }
  double to_physical(double z) const { return center + scale * z; }
};

inline AffineMap standard_map(PolyFamily family, const RandomVariable& rv) {
  if (family == PolyFamily::Legendre) {
    if (rv.kind() != RandomVariable::Kind::Uniform)
      throw std::invalid_argument("gpc: Legendre family requires a uniform law");
    return {0.5 * (rv.a() + rv.b()), 0.5 * (rv.b() - rv.a())};
  }
  if (rv.kind() != RandomVariable::Kind::Normal)
    throw std::invalid_argument("gpc: Hermite family requires a normal law");
  return {rv.mu(), rv.sigma()};
}

}  // namespace detail

struct QuadratureRule {
  std::vector<double> nodes;    // physical xi units, strictly increasing
  std::vector<double> weights;  // probability weights, sum to 1
  PolyFamily family = PolyFamily::Legendre;
  detail::AffineMap map;        // physical xi <-> standard variable
};

// Golub-Welsch: nodes/weights from the symmetric tridiagonal Jacobi
// matrix, then mapped into physical xi units.
inline QuadratureRule gauss_rule(PolyFamily family, std::size_t n, const RandomVariable& rv) {
  if (n < 1) throw std::invalid_argument("gauss_rule: need N >= 1");
  const auto map = detail::standard_map(family, rv);
  std::vector<double> diag(n, 0.0), sub(n > 1 ? n - 1 : 0), first;
  for (std::size_t k = 0; k + 1 < n; ++k)
    sub[k] = std::sqrt(detail::recurrence_beta(family, k + 1));
  linalg::tridiag_eigen_first(diag, sub, first);
  QuadratureRule rule;
  rule.family = family;
  rule.map = map;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = map.to_physical(diag[i]);
    rule.weights[i] = first[i] * first[i];  // mu0 = 1 (probability measure)
  }
  return rule;
}

struct GpcExpansion {
  std::vector<double> coefficients;
  PolyFamily family = PolyFamily::Legendre;
  detail::AffineMap map;
};

// Discrete projection: c_k = sum_n w_n U(xi_n) psi_k(z_n). The collocation
// nodes must be the rule's nodes.
inline GpcExpansion gpc_fit(const CollocationSet& colloc, const QuadratureRule& rule) {
  colloc.validate();
  const std::size_t n = rule.nodes.size();
  if (colloc.size() != n)
    throw std::invalid_argument("gpc_fit: collocation size does not match quadrature rule");
  double span = std::abs(rule.nodes.back() - rule.nodes.front());
  if (span == 0.0) span = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(colloc.nodes[i] - rule.nodes[i]) > 1e-12 * span)
      throw std::invalid_argument("gpc_fit: collocation nodes differ from quadrature nodes");

  GpcExpansion exp;
  exp.family = rule.family;
  exp.map = rule.map;
  exp.coefficients.assign(n, 0.0);
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::eval_basis(rule.family, exp.map.to_standard(rule.nodes[i]), psi);
    const double wu = rule.weights[i] * colloc.values[i];
    for (std::size_t k = 0; k < n; ++k) exp.coefficients[k] += wu * psi[k];
  }
  return exp;
}

inline double gpc_eval(const GpcExpansion& exp, double xi) {
  const std::size_t n = exp.coefficients.size();
  if (n == 0) return 0.0;
  const double z = exp.map.to_standard(xi);
  // direct recurrence sum
  double pm1 = 0.0, p = 1.0, acc = exp.coefficients[0];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double bk = std::sqrt(detail::recurrence_beta(exp.family, k));
    const double bk1 = std::sqrt(detail::recurrence_beta(exp.family, k + 1));
    const double pnext = (z * p - (k > 0 ? bk : 0.0) * pm1) / bk1;
    pm1 = p;
    p = pnext;
    acc += exp.coefficients[k + 1] * p;
  }
  return acc;
}

inline Moments gpc_moments(const GpcExpansion& exp) {
  Moments m;
  if (exp.coefficients.empty()) return m;
  m.mean = exp.coefficients[0];
  for (std::size_t k = 1; k < exp.coefficients.size(); ++k)
    m.variance += exp.coefficients[k] * exp.coefficients[k];
  return m;
}

}  // namespace scuq
