// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bioconvect/base_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bioconvect
{

namespace
{

// Panel offsets (fractions of the cell, ascending, ending at 1) for the
// cell [a, b] inside the layer [lo, hi].  The scattered intensity has
// weakly singular curvature at the walls, felt over a physical distance,
// so refinement is keyed to wall proximity: the two wall cells get steps
// graded geometrically into their corner, and nearby cells get equal
// substeps scaling like a power of h / distance.
std::vector<double> cell_breaks(double a, double b, double lo, double hi)
{
  const double h = b - a;
  const bool bottom = a - lo < 0.5 * h;
  const bool top = hi - b < 0.5 * h;
  if (bottom || top)
  {
    constexpr int m = 18;
    std::vector<double> t(m + 1);
    for (int k = 0; k <= m; ++k)
      t[k] = std::ldexp(1.0, k - m);  // 2^-m, ..., 1/2, 1
    if (bottom)
      return t;
    std::vector<double> r(m + 1);
    for (int k = 0; k < m; ++k)
      r[k] = 1.0 - t[m - 1 - k];      // 1/2, 3/4, ..., 1 - 2^-m
    r[m] = 1.0;
    return r;
  }
  const double d = std::max(std::min(a - lo, hi - b), h);
  const int steps = std::min(
      std::max(static_cast<int>(std::ceil(28.0 * std::pow(h / d, 0.8))), 2),
      96);
  std::vector<double> t(steps);
  for (int k = 0; k < steps; ++k)
    t[k] = static_cast<double>(k + 1) / steps;
  return t;
}

// Per-cell integral of the rate over [a, b], Gauss rule on graded panels.
template <class Rate>
double cell_integral(double a, double b, double lo, double hi,
                     const QuadratureRule &g, Rate &&swim)
{
  const std::vector<double> breaks = cell_breaks(a, b, lo, hi);
  const double h = b - a;
  double s = 0.0;
  double left = 0.0;
  for (double frac : breaks)
  {
    const double hp = h * (frac - left);
    for (std::size_t q = 0; q < g.nodes.size(); ++q)
      s += hp * g.weights[q] * swim(a + h * left + hp * g.nodes[q]);
    left = frac;
  }
  return s;
}

template <class Rate>
std::vector<double> shoot_unit(const std::vector<double> &z, Rate &&swim)
{
  // The cell ODE dn/dz = swim * n is linear, so each cell is solved
  // exactly by the exponential of the quadrature integral; no stepper
  // order limits the accuracy, only the graded quadrature itself.
  const std::size_t n = z.size();
  const QuadratureRule g4 = gauss_legendre(4, 0.0, 1.0);
  std::vector<double> out(n);
  out[0] = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
  {
    out[i + 1] =
        out[i] *
        std::exp(cell_integral(z[i], z[i + 1], z.front(), z.back(), g4, swim));
    if (!std::isfinite(out[i + 1]))
      throw std::runtime_error("base-state shooting overflowed; "
                               "swimming term too stiff for the grid");
  }
  return out;
}

double unit_mass(const std::vector<double> &z, std::vector<double> &n)
{
  // Newton on the trial value n(0) for the conservation defect.  The ODE
  // is linear and homogeneous, so d(mass)/d(n0) = mass / n0 and each
  // Newton step is an exact rescale; the loop is retained as a guard.
  double mass = 0.0;
  for (int pass = 0; pass < 50; ++pass)
  {
    mass = cumtrapz_corrected(z, n).back();
    if (!std::isfinite(mass) || mass <= 0.0)
      throw std::runtime_error("base-state shooting produced non-positive "
                               "suspension mass");
    if (std::abs(mass - 1.0) < 1e-13)
      return mass;
    for (double &v : n)
      v /= mass;
  }
  std::ostringstream msg;
  msg << "base-state shooting failed to reach unit mass after 50 Newton "
         "passes; defect " << std::abs(mass - 1.0);
  throw std::runtime_error(msg.str());
}

}  // namespace

BaseState solve_base_state(const Parameters &params, int n_grid, double tol,
                           int max_outer)
{
  params.validate();
  if (n_grid < 101)
    throw std::invalid_argument("base-state grid must have >= 101 points");

  BaseState st;
  st.params = params;
  st.z = linspace(0.0, 1.0, n_grid);
  st.ns.assign(st.z.size(), 1.0);

  const double kap = params.kappa;
  const double Lt = params.Lt;
  const std::size_t n = st.z.size();

  // Unit mass makes the full-depth optical thickness kappa * integral of
  // n_s = kappa for every iterate, so one kernel factorization serves the
  // whole fixed point; the gate below only fires if that ever drifts.
  auto rad = std::make_shared<FredholmRadiation>(params.omega, kap);

  std::vector<double> cum, tau(n), ns_new, upd(n), upd_prev;
  double theta = 1.0;
  double change = 0.0;
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  int it = 0;
  for (; it < max_outer; ++it)
  {
    cum = cumtrapz_corrected(st.z, st.ns);
    const double tau_max = kap * cum.back();
    if (std::abs(tau_max - rad->tau_max()) > 1e-12)
      rad = std::make_shared<FredholmRadiation>(params.omega, tau_max);
    for (std::size_t i = 0; i < n; ++i)
      tau[i] = std::min(std::max(kap * (cum.back() - cum[i]), 0.0), tau_max);
    const GridFunction tau_of_z(st.z, tau);
    auto swim = [&](double zq)
    {
      const double t =
          std::min(std::max(tau_of_z(zq), 0.0), rad->tau_max());
      return params.Vc * params.taxis.taxis(Lt * rad->upsilon(t));
    };
    ns_new = shoot_unit(st.z, swim);
    unit_mass(st.z, ns_new);

    change = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      upd[i] = ns_new[i] - st.ns[i];
      change = std::max(change, std::abs(upd[i]));
    }
    // Once below tol, keep polishing while each pass still buys a clear
    // improvement: the residual of the returned state scales with the last
    // update, and the extra passes are cheap next to the kernel setup.
    if (std::getenv("BIOCONVECT_TRACE"))
      std::fprintf(stderr, "  outer %3d change=%.3e theta=%.3f\n", it, change,
                   theta);
    if (change < best / 1.5)
    {
      best = change;
      stall = 0;
    }
    else
      ++stall;
    if (change < 1e-12 || (change < tol && stall >= 40))
    {
      st.ns = ns_new;
      break;
    }
    // Dynamic (Irons-Tuck) relaxation: damps an oscillating map and
    // accelerates a slowly contracting one with the same one-line update.
    if (!upd_prev.empty())
    {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        const double d = upd[i] - upd_prev[i];
        num += upd_prev[i] * d;
        den += d * d;
      }
      if (den > 0.0)
        theta = std::min(std::max(-theta * num / den, 0.01), 2.0);
    }
    for (std::size_t i = 0; i < n; ++i)
      st.ns[i] += theta * upd[i];
    upd_prev = upd;
  }
  if (change >= tol)
  {
    std::ostringstream msg;
    msg << "base-state outer loop still moving after " << max_outer
        << " passes; last max-norm update " << change;
    throw std::runtime_error(msg.str());
  }
  st.outer_iters = it + 1;
  st.outer_residual = change;

  // Populate the derived profiles from the converged concentration.
  cum = cumtrapz_corrected(st.z, st.ns);
  st.tau.resize(n);
  st.Gs.resize(n);
  st.Gsc.resize(n);
  st.Gsd.resize(n);
  st.qs.resize(n);
  st.Ms.resize(n);
  st.dMs.resize(n);
  st.Dns.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    st.tau[i] =
        std::min(std::max(kap * (cum.back() - cum[i]), 0.0), rad->tau_max());
    st.Gs[i] = Lt * rad->upsilon(st.tau[i]);
    st.Gsc[i] = Lt * std::exp(-st.tau[i]);
    st.Gsd[i] = st.Gs[i] - st.Gsc[i];
    st.qs[i] = Lt * rad->flux(st.tau[i]);
    st.Ms[i] = params.taxis.taxis(st.Gs[i]);
    st.dMs[i] = params.taxis.taxis_derivative(st.Gs[i]);
    st.Dns[i] = params.Vc * st.Ms[i] * st.ns[i];
  }
  st.DGsd = fd_derivative(st.z, st.Gsd);
  st.radiation = std::move(rad);
  return st;
}

double base_state_residual(const BaseState &state, const Parameters &params)
{
  const std::size_t n = state.z.size();
  if (n < 9 || state.ns.size() != n || !state.radiation)
    throw std::invalid_argument("base_state_residual needs a populated state");
  // Cell-mean form of the flux-balance residual: over each cell the exact
  // solution satisfies n(b) = n(a) exp(int_a^b Vc M dz), so the defect per
  // unit length is an integral mean of |dn/dz - Vc M n|.  The swim rate is
  // integrated by Gauss quadrature straight through the radiation engine,
  // which keeps the evaluator accurate at the walls (where the scattered
  // intensity has weakly singular curvature and pointwise finite
  // differences break down) and independent of how the state was produced.
  const FredholmRadiation &rad = *state.radiation;
  std::vector<double> cum = cumtrapz_corrected(state.z, state.ns);
  const double mass = cum.back();
  std::vector<double> tau(n);
  for (std::size_t i = 0; i < n; ++i)
    tau[i] = std::min(std::max(params.kappa * (mass - cum[i]), 0.0),
                      rad.tau_max());
  const GridFunction tau_of_z(state.z, tau);
  auto swim = [&](double zq)
  {
    const double t = std::min(std::max(tau_of_z(zq), 0.0), rad.tau_max());
    return params.Vc * params.taxis.taxis(params.Lt * rad.upsilon(t));
  };
  // Gauss-8 on the same graded panels the solver marches with: two orders
  // beyond the solver's rule, so the measurement is independent of it and
  // its own quadrature error stays below the defect being measured.
  const QuadratureRule cell = gauss_legendre(8, 0.0, 1.0);
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i)
  {
    const double a = state.z[i - 1];
    const double h = state.z[i] - a;
    const double s =
        cell_integral(a, state.z[i], state.z.front(), state.z.back(), cell,
                      swim);
    worst = std::max(
        std::abs(state.ns[i] - state.ns[i - 1] * std::exp(s)) / h, worst);
  }
  return std::max(worst, std::abs(mass - 1.0));
}

}  // namespace bioconvect
