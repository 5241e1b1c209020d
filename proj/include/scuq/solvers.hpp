#pragma once

// Deterministic 1-D finite-volume solver: second-order semi-discrete
// central-upwind fluxes with minmod-limited piecewise-linear
// reconstruction, SSP-RK3 time stepping, free boundaries. Models: Euler
// gas dynamics and the Saint-Venant shallow-water system with a
// well-balanced bed-slope source.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace scuq {

struct Grid1D {
  double x_min = 0.0, x_max = 1.0;
  std::size_t cells = 4;

  Grid1D(double lo, double hi, std::size_t j) : x_min(lo), x_max(hi), cells(j) {
    if (j < 4) throw std::invalid_argument("Grid1D: need J >= 4");
    if (!(hi > lo)) throw std::invalid_argument("Grid1D: need x_max > x_min");
  }
  double dx() const { return (x_max - x_min) / static_cast<double>(cells); }
  double center(std::size_t j) const {
    return x_min + (static_cast<double>(j) + 0.5) * dx();
  }
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t cell, double time)
      : std::runtime_error(what + " (cell " + std::to_string(cell) + ", t = " +
                           std::to_string(time) + ")"),
        cell(cell),
        time(time) {}
  std::size_t cell;
  double time;
};

using Cons = std::array<double, 3>;
using State = std::vector<Cons>;

namespace detail {

inline double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

}  // namespace detail

// ----------------------------------------------------------------- Euler

struct EulerModel {
  double gamma = 1.4;
  double limiter_theta = 1.3;

  double pressure(const Cons& u) const {
    return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
  }
  Cons flux(const Cons& u) const {
    const double v = u[1] / u[0];
    const double p = pressure(u);
    return {u[1], u[1] * v + p, v * (u[2] + p)};
  }
  // characteristic speed bounds u -+ c
  std::array<double, 2> speeds(const Cons& u) const {
    const double v = u[1] / u[0];
    const double c = std::sqrt(gamma * pressure(u) / u[0]);
    return {v - c, v + c};
  }
  Cons to_primitive(const Cons& u) const { return {u[0], u[1] / u[0], pressure(u)}; }
  Cons from_primitive(const Cons& q) const {
    return {q[0], q[0] * q[1], q[2] / (gamma - 1.0) + 0.5 * q[0] * q[1] * q[1]};
  }
};

inline Cons euler_flux(const Cons& u, double gamma) {
  if (!(u[0] > 0.0)) throw std::domain_error("euler_flux: non-positive density");
  return EulerModel{gamma}.flux(u);
}

// Central-upwind right-hand side with free boundaries; reconstruction in
// primitive variables.
inline State central_upwind_rhs(const EulerModel& model, const Grid1D& grid,
                                const State& state, double time = 0.0) {
  const std::size_t j = grid.cells;
  if (state.size() != j) throw std::invalid_argument("central_upwind_rhs: state size");
  const double dx = grid.dx();
  const std::size_t e = j + 4;  // two ghosts each side

  std::vector<Cons> q(e);
  for (std::size_t i = 0; i < e; ++i) {
    const std::size_t src = std::min(j - 1, static_cast<std::size_t>(std::max<long long>(
                                                0, static_cast<long long>(i) - 2)));
    q[i] = model.to_primitive(state[src]);
  }

  std::vector<Cons> slope(e, Cons{0.0, 0.0, 0.0});
  const double th = model.limiter_theta;
  for (std::size_t i = 1; i + 1 < e; ++i)
    for (int c = 0; c < 3; ++c)
      slope[i][c] = detail::minmod3(th * (q[i][c] - q[i - 1][c]),
                                    0.5 * (q[i + 1][c] - q[i - 1][c]),
                                    th * (q[i + 1][c] - q[i][c]));

  State rhs(j, Cons{0.0, 0.0, 0.0});
  std::vector<Cons> h(j + 1);
  for (std::size_t i = 0; i <= j; ++i) {
    Cons ql, qr;
    for (int c = 0; c < 3; ++c) {
      ql[c] = q[i + 1][c] + 0.5 * slope[i + 1][c];
      qr[c] = q[i + 2][c] - 0.5 * slope[i + 2][c];
    }
    if (!(ql[0] > 0.0) || !(qr[0] > 0.0) || !(ql[2] > 0.0) || !(qr[2] > 0.0))
      throw SolverError("central_upwind_rhs: vacuum or negative pressure after reconstruction",
                        std::min(i, j - 1), time);
    const Cons ul = model.from_primitive(ql), ur = model.from_primitive(qr);
    const auto sl = model.speeds(ul), sr = model.speeds(ur);
    const double ap = std::max({sl[1], sr[1], 0.0});
    const double am = std::min({sl[0], sr[0], 0.0});
    const Cons fl = model.flux(ul), fr = model.flux(ur);
    if (ap - am < 1e-14) {
      for (int c = 0; c < 3; ++c) h[i][c] = 0.5 * (fl[c] + fr[c]);
    } else {
      const double inv = 1.0 / (ap - am);
      for (int c = 0; c < 3; ++c)
        h[i][c] = (ap * fl[c] - am * fr[c]) * inv + ap * am * inv * (ur[c] - ul[c]);
    }
  }
  for (std::size_t i = 0; i < j; ++i)
    for (int c = 0; c < 3; ++c) rhs[i][c] = -(h[i + 1][c] - h[i][c]) / dx;
  return rhs;
}

// ------------------------------------------------------ shallow water

struct SweModel {
  double g = 1.0;
  double limiter_theta = 1.3;
  double kappa = 1e-8;  // velocity desingularization depth scale
  std::vector<double> z_interface;  // bottom topography at the J+1 interfaces

  double z_center(std::size_t jcell) const {
    return 0.5 * (z_interface[jcell] + z_interface[jcell + 1]);
  }
  double velocity(double h, double hu) const {
    const double h2 = h * h;
    return 2.0 * h * hu / (h2 + std::max(h2, kappa * kappa));
  }
};

inline Cons swe_flux(double h, double hu, double g, double kappa = 1e-8) {
  if (h < 0.0) throw std::domain_error("swe_flux: negative depth");
  if (h == 0.0) return {0.0, 0.0, 0.0};
  const double h2 = h * h;
  const double u = 2.0 * h * hu / (h2 + std::max(h2, kappa * kappa));
  return {h * u, h * u * u + 0.5 * g * h * h, 0.0};
}

// Well-balanced central-upwind RHS: reconstruction in (w, hu) with the
// bed-slope source discretized so that flux gradient and source cancel
// exactly for a lake at rest. State components: (h, hu, unused).
inline State central_upwind_rhs(const SweModel& model, const Grid1D& grid,
                                const State& state, [[maybe_unused]] double time = 0.0) {
  const std::size_t j = grid.cells;
  if (state.size() != j) throw std::invalid_argument("central_upwind_rhs: state size");
  if (model.z_interface.size() != j + 1)
    throw std::invalid_argument("central_upwind_rhs: topography size");
  const double dx = grid.dx();
  const std::size_t e = j + 4;

  // topography on the extended grid: replicated beyond the boundaries
  auto zi = [&](long long k) {
    return model.z_interface[static_cast<std::size_t>(
        std::clamp<long long>(k - 2, 0, static_cast<long long>(j)))];
  };

  std::vector<Cons> q(e);  // (w, hu)
  for (std::size_t i = 0; i < e; ++i) {
    const std::size_t src = std::min(j - 1, static_cast<std::size_t>(std::max<long long>(
                                                0, static_cast<long long>(i) - 2)));
    const double zc = 0.5 * (zi(static_cast<long long>(i)) + zi(static_cast<long long>(i) + 1));
    q[i] = {state[src][0] + zc, state[src][1], 0.0};
  }

  std::vector<Cons> slope(e, Cons{0.0, 0.0, 0.0});
  const double th = model.limiter_theta;
  for (std::size_t i = 1; i + 1 < e; ++i)
    for (int c = 0; c < 2; ++c)
      slope[i][c] = detail::minmod3(th * (q[i][c] - q[i - 1][c]),
                                    0.5 * (q[i + 1][c] - q[i - 1][c]),
                                    th * (q[i + 1][c] - q[i][c]));

  // interface reconstructions; keep the east/west depths per cell for the
  // source term
  std::vector<Cons> h_flux(j + 1);
  std::vector<double> h_east(e, 0.0), h_west(e, 0.0);
  for (std::size_t i = 0; i <= j; ++i) {
    const double z_int = zi(static_cast<long long>(i) + 2);
    const double wl = q[i + 1][0] + 0.5 * slope[i + 1][0];
    const double wr = q[i + 2][0] - 0.5 * slope[i + 2][0];
    double hl = wl - z_int, hr = wr - z_int;
    if (hl < 0.0) hl = 0.0;
    if (hr < 0.0) hr = 0.0;
    const double hul = q[i + 1][1] + 0.5 * slope[i + 1][1];
    const double hur = q[i + 2][1] - 0.5 * slope[i + 2][1];
    h_east[i + 1] = hl;
    h_west[i + 2] = hr;
    const double ul = model.velocity(hl, hul), ur = model.velocity(hr, hur);
    const double cl = std::sqrt(model.g * hl), cr = std::sqrt(model.g * hr);
    const double ap = std::max({ul + cl, ur + cr, 0.0});
    const double am = std::min({ul - cl, ur - cr, 0.0});
    const Cons fl = {hl * ul, hl * ul * ul + 0.5 * model.g * hl * hl, 0.0};
    const Cons fr = {hr * ur, hr * ur * ur + 0.5 * model.g * hr * hr, 0.0};
    const Cons cons_l = {hl, hl * ul, 0.0}, cons_r = {hr, hr * ur, 0.0};
    if (ap - am < 1e-14) {
      for (int c = 0; c < 2; ++c) h_flux[i][c] = 0.5 * (fl[c] + fr[c]);
    } else {
      const double inv = 1.0 / (ap - am);
      for (int c = 0; c < 2; ++c)
        h_flux[i][c] =
            (ap * fl[c] - am * fr[c]) * inv + ap * am * inv * (cons_r[c] - cons_l[c]);
    }
    h_flux[i][2] = 0.0;
  }

  State rhs(j, Cons{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < j; ++i) {
    const double dz = zi(static_cast<long long>(i) + 3) - zi(static_cast<long long>(i) + 2);
    const double source = -model.g * 0.5 * (h_east[i + 2] + h_west[i + 2]) * dz / dx;
    rhs[i][0] = -(h_flux[i + 1][0] - h_flux[i][0]) / dx;
    rhs[i][1] = -(h_flux[i + 1][1] - h_flux[i][1]) / dx + source;
  }
  return rhs;
}

// --------------------------------------------------------- time stepping

// Standard three-stage SSP-RK3 step for an arbitrary RHS operator.
inline State ssp_rk3_step(const State& u, const std::function<State(const State&)>& rhs,
                          double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ssp_rk3_step: need dt > 0");
  const std::size_t n = u.size();
  auto axpy = [n](const State& a, double ca, const State& b, double cb, const State& l,
                  double cl) {
    State out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (int c = 0; c < 3; ++c) out[i][c] = ca * a[i][c] + cb * b[i][c] + cl * l[i][c];
    return out;
  };
  const State l0 = rhs(u);
  const State u1 = axpy(u, 1.0, u, 0.0, l0, dt);
  const State l1 = rhs(u1);
  const State u2 = axpy(u, 0.75, u1, 0.25, l1, 0.25 * dt);
  const State l2 = rhs(u2);
  return axpy(u, 1.0 / 3.0, u2, 2.0 / 3.0, l2, 2.0 / 3.0 * dt);
}

template <class Model>
inline double cfl_dt(const Model& model, const Grid1D& grid, const State& state, double cfl) {
  if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl_dt: need cfl in (0,1)");
  double s = 0.0;
  if constexpr (std::is_same_v<Model, EulerModel>) {
    for (const auto& u : state) {
      const auto sp = model.speeds(u);
      s = std::max({s, std::abs(sp[0]), std::abs(sp[1])});
    }
  } else {
    for (const auto& u : state) {
      const double vel = model.velocity(u[0], u[1]);
      const double c = std::sqrt(model.g * std::max(u[0], 0.0));
      s = std::max({s, std::abs(vel - c), std::abs(vel + c)});
    }
  }
  return s > 0.0 ? cfl * grid.dx() / s : cfl * grid.dx();
}

// March to T, clipping the final step to land exactly on it.
template <class Model>
inline State solve(const Model& model, const Grid1D& grid, State state, double t_final,
                   double cfl = 0.45) {
  if (!(t_final > 0.0)) throw std::invalid_argument("solve: need T > 0");
  double t = 0.0;
  const std::size_t max_steps = 100000000;
  for (std::size_t step = 0; step < max_steps && t < t_final; ++step) {
    double dt = cfl_dt(model, grid, state, cfl);
    if (t + dt > t_final) dt = t_final - t;
    const double t_now = t;
    state = ssp_rk3_step(
        state, [&](const State& u) { return central_upwind_rhs(model, grid, u, t_now); }, dt);
    t += dt;
  }
  if (t < t_final) throw std::runtime_error("solve: step limit exceeded");
  return state;
}

}  // namespace scuq
