// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BIOCONVECT_BASE_STATE_HPP
#define BIOCONVECT_BASE_STATE_HPP

#include <memory>
#include <vector>

#include "bioconvect/parameters.hpp"
#include "bioconvect/radiative_steady.hpp"
#include "bioconvect/specfun.hpp"

namespace bioconvect
{

// Equilibrium of the suspension: no flow, cell flux balance
// dn_s/dz = Vc M(G_s) n_s with unit mean concentration, coupled to the
// radiation field through the optical depth tau(z) = kappa * int_z^1 n_s.
struct BaseState
{
  std::vector<double> z;      // uniform grid on [0, 1]
  std::vector<double> ns;     // cell concentration
  std::vector<double> Gs;     // total intensity
  std::vector<double> Gsc;    // collimated part, Lt * exp(-tau)
  std::vector<double> Gsd;    // diffuse part
  std::vector<double> qs;     // net radiative flux magnitude (times Lt)
  std::vector<double> Ms;     // taxis response M(G_s)
  std::vector<double> dMs;    // dM/dG at G_s
  std::vector<double> Dns;    // dn_s/dz = Vc M_s n_s
  std::vector<double> DGsd;   // d(G_sd)/dz
  std::vector<double> tau;    // optical depth measured from the top

  Parameters params;
  std::shared_ptr<const FredholmRadiation> radiation;

  int outer_iters = 0;
  double outer_residual = 0.0;

  GridFunction interpolant(const std::vector<double>& values) const
  {
    return GridFunction(z, values);
  }
};

// Solves the coupled concentration/radiation equilibrium on a uniform grid
// of n_grid points.  Fixed-point iteration on the radiation field with
// under-relaxation when the update direction reverses; each pass resolves
// the concentration ODE by RK4 shooting with a Newton update of n_s(0)
// enforcing unit mean to 1e-10.  Throws std::runtime_error on stagnation
// past max_outer passes (message reports the last residual).
BaseState solve_base_state(const Parameters& params, int n_grid = 401,
                           double tol = 1e-8, int max_outer = 200);

// Self-consistency of a solved state: max over interior nodes of the
// concentration ODE residual |dn_s/dz - Vc M_s n_s| (high-order stencil
// slopes) and the unit-mean defect.  Large values flag corrupted or
// unconverged data.
double base_state_residual(const BaseState& state, const Parameters& params);

}  // namespace bioconvect

#endif  // BIOCONVECT_BASE_STATE_HPP
