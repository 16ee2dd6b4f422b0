// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bioconvect/radiative_steady.hpp"

#include <cmath>
#include <stdexcept>
#include <Eigen/Dense>

namespace bioconvect
{

namespace
{

// int_{u0}^{u1} u^q E_n(|u|) du for a segment not straddling 0, with an
// optional sign flip on the negative side (signed kernels integrate
// E_n(|u|) sgn(u)).
double segment_moment(int n_kernel, int q, double u0, double u1, bool signed_row)
{
  if (u1 <= 0.0)
  {
    // substitute v = -u
    const double s = (q % 2 == 0) ? 1.0 : -1.0;
    const double val = s * (en_moment(n_kernel, q, -u0) - en_moment(n_kernel, q, -u1));
    return signed_row ? -val : val;
  }
  return en_moment(n_kernel, q, u1) - en_moment(n_kernel, q, u0);
}

}  // namespace

FredholmRadiation::FredholmRadiation(double omega, double tau_max, int npanels,
                                     int order)
  : omega_(omega), tau_max_(tau_max)
{
  if (omega < 0.0 || omega > 1.0)
  {
    throw std::invalid_argument("FredholmRadiation: albedo outside [0, 1]");
  }
  if (!(tau_max > 0.0))
  {
    throw std::invalid_argument("FredholmRadiation: tau_max must be positive");
  }
  if (npanels < 3 || order < 2)
  {
    throw std::invalid_argument("FredholmRadiation: quadrature too small");
  }
  rule_ = gauss_panels(0.0, tau_max, npanels, order);
  const int m = static_cast<int>(rule_.nodes.size());

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; i++)
  {
    const double tau = rule_.nodes[i];
    const std::vector<double> row = kernel_row(tau, 1, false);
    double row_sum = 0.0;
    for (int j = 0; j < m; j++)
    {
      row_sum += row[j];
    }
    // Subtraction of the singularity: the quadrature's own mass is
    // replaced by the analytic kernel mass 2 - E2(tau) - E2(tau_max-tau).
    const double mass = 2.0 - exp_integral(2, tau) - exp_integral(2, tau_max - tau);
    for (int j = 0; j < m; j++)
    {
      A(i, j) -= 0.5 * omega_ * row[j];
    }
    A(i, i) -= 0.5 * omega_ * (mass - row_sum);
    rhs(i) = std::exp(-tau);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd x = lu.solve(rhs);
  residual_ = (A * x - rhs).lpNorm<Eigen::Infinity>();
  if (!x.allFinite())
  {
    throw std::runtime_error("FredholmRadiation: singular Nystrom system");
  }
  ups_.assign(x.data(), x.data() + m);
}

std::vector<double> FredholmRadiation::kernel_row(double tau, int n_kernel,
                                                  bool signed_row) const
{
  const int order = rule_.order;
  const int npanels = static_cast<int>(rule_.edges.size()) - 1;
  const double h = rule_.edges[1] - rule_.edges[0];
  std::vector<double> w(rule_.nodes.size(), 0.0);
  for (int p = 0; p < npanels; p++)
  {
    const double lo = rule_.edges[p], hi = rule_.edges[p + 1];
    const int base = p * order;
    // Two-panel margin: at that distance the plain Gauss error in the
    // E_n kernel is below roundoff, so the hand-off between the two
    // branches is seamless as the query point moves.
    const bool near = (tau > lo - 2.01 * h) && (tau < hi + 2.01 * h);
    if (!near)
    {
      for (int j = 0; j < order; j++)
      {
        const double t = rule_.nodes[base + j];
        double kv = exp_integral(n_kernel, std::abs(tau - t));
        if (signed_row && t < tau)
        {
          kv = -kv;
        }
        w[base + j] += rule_.weights[base + j] * kv;
      }
      continue;
    }
    // Product integration: expand the panel's Lagrange basis in scaled
    // monomials u = (t - tau)/h and use analytic x^q E_n moments.
    const double a = lo - tau, b = hi - tau;
    Eigen::MatrixXd Vt(order, order);  // Vt(q, j) = u_j^q
    for (int j = 0; j < order; j++)
    {
      const double u = (rule_.nodes[base + j] - tau) / h;
      double pw = 1.0;
      for (int q = 0; q < order; q++)
      {
        Vt(q, j) = pw;
        pw *= u;
      }
    }
    Eigen::VectorXd Mq(order);
    double hq = 1.0;
    for (int q = 0; q < order; q++)
    {
      double mom;
      if (a < 0.0 && b > 0.0)
      {
        mom = segment_moment(n_kernel, q, a, 0.0, signed_row) +
              segment_moment(n_kernel, q, 0.0, b, signed_row);
      }
      else
      {
        mom = segment_moment(n_kernel, q, a, b, signed_row);
      }
      Mq(q) = mom / hq;
      hq *= h;
    }
    const Eigen::VectorXd wa = Vt.fullPivLu().solve(Mq);
    for (int j = 0; j < order; j++)
    {
      w[base + j] += wa(j);
    }
  }
  return w;
}

double FredholmRadiation::upsilon(double tau) const
{
  if (tau < -1.0e-12 || tau > tau_max_ + 1.0e-12)
  {
    throw std::out_of_range("FredholmRadiation::upsilon: tau outside [0, tau_max]");
  }
  tau = std::min(std::max(tau, 0.0), tau_max_);
  const std::vector<double> row = kernel_row(tau, 1, false);
  double acc = 0.0, row_sum = 0.0;
  for (std::size_t j = 0; j < row.size(); j++)
  {
    acc += row[j] * ups_[j];
    row_sum += row[j];
  }
  const double mass = 2.0 - exp_integral(2, tau) - exp_integral(2, tau_max_ - tau);
  // Solve the scalar subtraction-form equation for Upsilon(tau).
  const double denom = 1.0 - 0.5 * omega_ * (mass - row_sum);
  return (std::exp(-tau) + 0.5 * omega_ * acc) / denom;
}

double FredholmRadiation::diffuse_flux_up(double tau) const
{
  if (tau < -1.0e-12 || tau > tau_max_ + 1.0e-12)
  {
    throw std::out_of_range("FredholmRadiation::diffuse_flux_up: tau outside range");
  }
  tau = std::min(std::max(tau, 0.0), tau_max_);
  const std::vector<double> row = kernel_row(tau, 2, true);
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); j++)
  {
    acc += row[j] * ups_[j];
  }
  return 0.5 * omega_ * acc;
}

double FredholmRadiation::flux(double tau) const
{
  return std::abs(-std::exp(-tau) + diffuse_flux_up(tau));
}

SteadyRadiation solve_fie(double omega, double tau_max, int npanels, int order)
{
  SteadyRadiation rad;
  rad.engine = std::make_shared<FredholmRadiation>(omega, tau_max, npanels, order);
  rad.omega = omega;
  rad.tau_max = tau_max;
  rad.tau_grid = rad.engine->nodes();
  rad.upsilon = rad.engine->node_values();
  rad.collimated.resize(rad.tau_grid.size());
  for (std::size_t i = 0; i < rad.tau_grid.size(); i++)
  {
    rad.collimated[i] = std::exp(-rad.tau_grid[i]);
  }
  return rad;
}

SteadyRadiation steady_flux(SteadyRadiation rad)
{
  if (!rad.engine || rad.upsilon.empty())
  {
    throw std::invalid_argument("steady_flux: upsilon not populated");
  }
  rad.flux.resize(rad.tau_grid.size());
  for (std::size_t i = 0; i < rad.tau_grid.size(); i++)
  {
    rad.flux[i] = rad.engine->flux(rad.tau_grid[i]);
  }
  return rad;
}

GridFunction total_intensity_on_z(const SteadyRadiation &rad,
                                  const GridFunction &n_profile, double kappa,
                                  double Lt)
{
  if (!rad.engine)
  {
    throw std::invalid_argument("total_intensity_on_z: missing FIE engine");
  }
  const std::vector<double> &z = n_profile.grid();
  const std::vector<double> cum = cumtrapz(z, n_profile.values());
  std::vector<double> G(z.size());
  for (std::size_t i = 0; i < z.size(); i++)
  {
    const double tau = kappa * (cum.back() - cum[i]);
    G[i] = Lt * rad.engine->upsilon(std::min(tau, rad.tau_max));
  }
  return GridFunction(z, G);
}

std::vector<double> diffuse_flux_oracle_batch(const FredholmRadiation &rad,
                                              const std::vector<double> &taus,
                                              int n_polar, int n_tau)
{
  // Formal solution per direction with a piecewise-linear source sampled
  // once on a fine uniform grid, then Gauss quadrature over each polar
  // half-range.  Query depths are snapped to the fine grid (error
  // O(tau_max/n_tau) in position only).
  const double tmax = rad.tau_max();
  const std::vector<double> tg = linspace(0.0, tmax, n_tau);
  std::vector<double> S(tg.size());
  for (std::size_t i = 0; i < tg.size(); i++)
  {
    S[i] = rad.upsilon(tg[i]);
  }
  const QuadratureRule half = gauss_legendre(n_polar / 2, 0.0, 1.0);

  std::vector<double> out;
  out.reserve(taus.size());
  for (const double tau : taus)
  {
    const int iq = static_cast<int>(std::lround(tau / tmax * (n_tau - 1)));
    double up = 0.0, down = 0.0;
    for (std::size_t jm = 0; jm < half.nodes.size(); jm++)
    {
      const double mu = half.nodes[jm];
      // Segment update: entering intensity attenuates by E; a linear
      // source between the segment ends adds (S_entry (T0-T1) + S_exit T1)/mu.
      double acc_d = 0.0;  // downward ray from tau=0 to the query point
      for (int i = 0; i < iq; i++)
      {
        const double dt = tg[i + 1] - tg[i];
        const double E = std::exp(-dt / mu);
        const double T0 = mu * (1.0 - E);
        const double T1 = (dt - T0) * mu / dt;
        acc_d = acc_d * E + (S[i] * (T0 - T1) + S[i + 1] * T1) / mu;
      }
      double acc_u = 0.0;  // upward ray from tau=tau_max to the query point
      for (int i = n_tau - 1; i > iq; i--)
      {
        const double dt = tg[i] - tg[i - 1];
        const double E = std::exp(-dt / mu);
        const double T0 = mu * (1.0 - E);
        const double T1 = (dt - T0) * mu / dt;
        acc_u = acc_u * E + (S[i] * (T0 - T1) + S[i - 1] * T1) / mu;
      }
      up += half.weights[jm] * mu * acc_u;
      down += half.weights[jm] * mu * acc_d;
    }
    out.push_back(2.0 * M_PI * (rad.omega() / (4.0 * M_PI)) * (up - down));
  }
  return out;
}

double diffuse_flux_oracle(const FredholmRadiation &rad, double tau, int n_polar,
                           int n_tau)
{
  return diffuse_flux_oracle_batch(rad, {tau}, n_polar, n_tau).front();
}

}  // namespace bioconvect
