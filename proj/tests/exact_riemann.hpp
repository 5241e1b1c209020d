#pragma once

// Exact Riemann solver for the 1-D Euler equations (ideal gas), used as a
// test oracle for the finite-volume solver. Star-region pressure by
// Newton iteration on the pressure function, then self-similar sampling.

#include <cmath>
#include <stdexcept>

namespace riemann {

struct PrimState {
  double rho, u, p;
};

struct Solution {
  PrimState left, right;
  double gamma;
  double p_star, u_star;
};

namespace detail {

// f_K(p): velocity jump across the left/right wave (shock or rarefaction)
inline double wave_fn(double p, const PrimState& s, double g, double& dfdp) {
  const double a = std::sqrt(g * s.p / s.rho);
  if (p > s.p) {  // shock
    const double ak = 2.0 / ((g + 1.0) * s.rho);
    const double bk = (g - 1.0) / (g + 1.0) * s.p;
    const double sq = std::sqrt(ak / (p + bk));
    dfdp = sq * (1.0 - 0.5 * (p - s.p) / (p + bk));
    return (p - s.p) * sq;
  }
  // rarefaction
  const double pr = p / s.p;
  dfdp = std::pow(pr, -(g + 1.0) / (2.0 * g)) / (s.rho * a);
  return 2.0 * a / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
}

}  // namespace detail

inline Solution solve(const PrimState& l, const PrimState& r, double gamma) {
  Solution sol{l, r, gamma, 0.0, 0.0};
  const double du = r.u - l.u;
  double p = 0.5 * (l.p + r.p);  // initial guess
  for (int it = 0; it < 100; ++it) {
    double dfl, dfr;
    const double fl = detail::wave_fn(p, l, gamma, dfl);
    const double fr = detail::wave_fn(p, r, gamma, dfr);
    const double f = fl + fr + du;
    const double step = f / (dfl + dfr);
    double pn = p - step;
    if (pn <= 0.0) pn = 0.5 * p;
    if (std::abs(pn - p) < 1e-14 * pn) {
      p = pn;
      break;
    }
    p = pn;
  }
  sol.p_star = p;
  double dfl, dfr;
  const double fl = detail::wave_fn(p, l, gamma, dfl);
  const double fr = detail::wave_fn(p, r, gamma, dfr);
  sol.u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
  return sol;
}

// Sample the self-similar solution at speed s = x/t.
inline PrimState sample(const Solution& sol, double s) {
  const double g = sol.gamma;
  const auto& l = sol.left;
  const auto& r = sol.right;
  const double ps = sol.p_star, us = sol.u_star;

  if (s <= us) {  // left of contact
    const double al = std::sqrt(g * l.p / l.rho);
    if (ps > l.p) {  // left shock
      const double sl =
          l.u - al * std::sqrt((g + 1.0) / (2.0 * g) * ps / l.p + (g - 1.0) / (2.0 * g));
      if (s <= sl) return l;
      const double rho = l.rho * ((ps / l.p + (g - 1.0) / (g + 1.0)) /
                                  ((g - 1.0) / (g + 1.0) * ps / l.p + 1.0));
      return {rho, us, ps};
    }
    // left rarefaction
    const double as = al * std::pow(ps / l.p, (g - 1.0) / (2.0 * g));
    if (s <= l.u - al) return l;
    if (s >= us - as) return {l.rho * std::pow(ps / l.p, 1.0 / g), us, ps};
    const double u = 2.0 / (g + 1.0) * (al + (g - 1.0) / 2.0 * l.u + s);
    const double a = 2.0 / (g + 1.0) * (al + (g - 1.0) / 2.0 * (l.u - s));
    const double rho = l.rho * std::pow(a / al, 2.0 / (g - 1.0));
    return {rho, u, l.p * std::pow(a / al, 2.0 * g / (g - 1.0))};
  }

  // right of contact
  const double ar = std::sqrt(g * r.p / r.rho);
  if (ps > r.p) {  // right shock
    const double sr =
        r.u + ar * std::sqrt((g + 1.0) / (2.0 * g) * ps / r.p + (g - 1.0) / (2.0 * g));
    if (s >= sr) return r;
    const double rho = r.rho * ((ps / r.p + (g - 1.0) / (g + 1.0)) /
                                ((g - 1.0) / (g + 1.0) * ps / r.p + 1.0));
    return {rho, us, ps};
  }
  // right rarefaction
  const double as = ar * std::pow(ps / r.p, (g - 1.0) / (2.0 * g));
  if (s >= r.u + ar) return r;
  if (s <= us + as) return {r.rho * std::pow(ps / r.p, 1.0 / g), us, ps};
  const double u = 2.0 / (g + 1.0) * (-ar + (g - 1.0) / 2.0 * r.u + s);
  const double a = 2.0 / (g + 1.0) * (ar - (g - 1.0) / 2.0 * (r.u - s));
  const double rho = r.rho * std::pow(a / ar, 2.0 / (g - 1.0));
  return {rho, u, r.p * std::pow(a / ar, 2.0 * g / (g - 1.0))};
}

}  // namespace riemann
