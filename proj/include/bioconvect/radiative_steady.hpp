// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BIOCONVECT_RADIATIVE_STEADY_HPP
#define BIOCONVECT_RADIATIVE_STEADY_HPP

#include <memory>
#include <vector>
#include "bioconvect/specfun.hpp"

namespace bioconvect
{

// Nystrom solver for the total-intensity Fredholm equation
//
//   Upsilon(tau) = exp(-tau) + (omega/2) int_0^{tau_max} Upsilon(t) E1(|tau - t|) dt
//
// on composite Gauss-Legendre panels.  The log singularity of E1 is
// handled two ways at once: rows use product integration (exact monomial
// x E_n moments) on panels adjacent to the collocation point, and the
// diagonal carries the subtraction identity
// int_0^{tau_max} E1(|tau - t|) dt = 2 - E2(tau) - E2(tau_max - tau).
// Off-node values are Nystrom-natural interpolants of the same equation,
// so the solution is smooth and self-consistent everywhere in
// [0, tau_max].
class FredholmRadiation
{
public:
  FredholmRadiation(double omega, double tau_max, int npanels = 40, int order = 6);

  // Total dimensionless intensity Upsilon(tau).
  double upsilon(double tau) const;
  // Upward-positive diffuse flux per unit incident intensity:
  // (omega/2) [ int_tau^{max} Ups E2(t - tau) dt - int_0^tau Ups E2(tau - t) dt ].
  double diffuse_flux_up(double tau) const;
  // Flux magnitude q_s per unit incident intensity: |{-exp(-tau)} + diffuse|.
  double flux(double tau) const;

  double omega() const { return omega_; }
  double tau_max() const { return tau_max_; }
  // Max-norm residual of the discretized integral equation at the nodes.
  double residual() const { return residual_; }
  const std::vector<double> &nodes() const { return rule_.nodes; }
  const std::vector<double> &node_values() const { return ups_; }

private:
  std::vector<double> kernel_row(double tau, int n_kernel, bool signed_row) const;

  double omega_, tau_max_;
  PanelRule rule_;
  std::vector<double> ups_;
  double residual_ = 0.0;
};

// Sampled view of the steady radiation field (tau space).
struct SteadyRadiation
{
  std::vector<double> tau_grid;
  std::vector<double> upsilon;     // total intensity per unit L_t
  std::vector<double> collimated;  // exp(-tau) per unit L_t
  std::vector<double> flux;        // q_s per unit L_t (filled by steady_flux)
  double omega = 0.0;
  double tau_max = 0.0;
  std::shared_ptr<const FredholmRadiation> engine;
};

// Solve the FIE and sample Upsilon/collimated at the quadrature nodes.
SteadyRadiation solve_fie(double omega, double tau_max, int npanels = 40,
                          int order = 6);

// Populate rad.flux at rad.tau_grid from the closed E2 form.
SteadyRadiation steady_flux(SteadyRadiation rad);

// G_s(z) = Lt * Upsilon(tau(z)), tau(z) = kappa int_z^1 n dz', on the
// n_profile grid.
GridFunction total_intensity_on_z(const SteadyRadiation &rad,
                                  const GridFunction &n_profile, double kappa,
                                  double Lt);

// Brute-force validation path for the flux: angular quadrature of the
// formal solution of the diffuse transport equation over n_polar total
// polar ordinates (half up, half down), with the source Upsilon taken
// from rad.  Returns the upward-positive diffuse flux per unit L_t.
// Query depths snap to the internal n_tau-point uniform grid.
double diffuse_flux_oracle(const FredholmRadiation &rad, double tau,
                           int n_polar = 256, int n_tau = 4001);
std::vector<double> diffuse_flux_oracle_batch(const FredholmRadiation &rad,
                                              const std::vector<double> &taus,
                                              int n_polar = 256,
                                              int n_tau = 4001);

}  // namespace bioconvect

#endif  // BIOCONVECT_RADIATIVE_STEADY_HPP
