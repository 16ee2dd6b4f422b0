// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BIOCONVECT_SPECFUN_HPP
#define BIOCONVECT_SPECFUN_HPP

#include <cstddef>
#include <vector>

namespace bioconvect
{

// Exponential integral E_n(x) = int_1^inf exp(-x t) / t^n dt, absolute
// error below 1e-12.  Power series for x <= 1, modified Lentz continued
// fraction above.  Throws std::invalid_argument for x < 0, n < 1 or the
// logarithmically divergent point (n = 1, x = 0).
double exp_integral(int n, double x);

// I(n, q, x) = int_0^x s^q E_n(s) ds for q >= 0, x >= 0.  Uses
// I(n, 0, x) = 1/n - E_{n+1}(x) and integration by parts upward in n.
double en_moment(int n, int q, double x);

struct QuadratureRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b]; exact for degree <= 2n-1.
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite Gauss-Legendre rule: npanels equal panels of the given order
// on [a, b].  edges has npanels+1 entries; nodes/weights are concatenated
// panel rules in ascending order.
struct PanelRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> edges;
  int order = 0;
};

PanelRule gauss_panels(double a, double b, int npanels, int order);

// C^1 piecewise-cubic Hermite interpolant with finite-difference node
// slopes (5-point stencils, one-sided near the ends).  Exact at the nodes
// and reproduces cubic data.  Queries outside the grid range (beyond a
// small roundoff guard) throw std::out_of_range.
class GridFunction
{
public:
  GridFunction() = default;
  GridFunction(std::vector<double> grid, std::vector<double> values);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double> &grid() const { return x_; }
  const std::vector<double> &values() const { return y_; }
  // Node slopes of the interpolant (its exact derivative at the nodes).
  const std::vector<double> &slopes() const { return d_; }
  std::size_t size() const { return x_.size(); }

private:
  std::size_t segment(double x) const;

  std::vector<double> x_, y_, d_;
};

// Finite-difference weights (Fornberg) for the m-th derivative at x0 on
// the given nodes; exact for polynomials of degree nodes.size()-1.
std::vector<double> fd_weights(double x0, const std::vector<double> &nodes,
                               int m);

// Finite-difference first derivative samples on a strictly increasing
// grid (the slopes a GridFunction would carry).  Sliding stencil of
// `width` points (order width-1 on smooth data); width is clamped to the
// grid size and must be >= 2.
std::vector<double> fd_derivative(const std::vector<double> &x,
                                  const std::vector<double> &y,
                                  int width = 5);

double trapz(const std::vector<double> &x, const std::vector<double> &f);

// Cumulative trapezoid integral from x.front(); result[0] = 0.
std::vector<double> cumtrapz(const std::vector<double> &x,
                             const std::vector<double> &f);

// Cumulative integral with the two-point Hermite (slope-corrected
// trapezoid) rule, h^2/12 correction from fd_derivative slopes; exact for
// cubics per interval, O(h^4) globally on smooth data.
std::vector<double> cumtrapz_corrected(const std::vector<double> &x,
                                       const std::vector<double> &f);

std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace bioconvect

#endif  // BIOCONVECT_SPECFUN_HPP
