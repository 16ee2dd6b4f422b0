// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bioconvect/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bioconvect
{

namespace
{

constexpr double EULER_GAMMA = 0.57721566490153286060651209008240;
constexpr int EN_MAX_ITER = 200;
constexpr double EN_EPS = 1.0e-15;
constexpr double EN_BIG = std::numeric_limits<double>::max() * EN_EPS;

// Power series, x <= 1.  For n = 1 the classic -gamma - ln x + sum;
// for n >= 2 the general series with the digamma term (Abramowitz &
// Stegun 5.1.12).
double expint_series(int n, double x)
{
  const int nm1 = n - 1;
  if (x == 0.0)
  {
    return 1.0 / nm1;  // n >= 2 here
  }
  double ans = (nm1 != 0) ? 1.0 / nm1 : -std::log(x) - EULER_GAMMA;
  double fact = 1.0;
  for (int i = 1; i <= EN_MAX_ITER; i++)
  {
    fact *= -x / i;
    double del;
    if (i != nm1)
    {
      del = -fact / (i - nm1);
    }
    else
    {
      double psi = -EULER_GAMMA;
      for (int ii = 1; ii <= nm1; ii++)
      {
        psi += 1.0 / ii;
      }
      del = fact * (-std::log(x) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * EN_EPS)
    {
      return ans;
    }
  }
  throw std::runtime_error("exp_integral: series failed to converge");
}

// Modified Lentz continued fraction, x > 1.
double expint_contfrac(int n, double x)
{
  const int nm1 = n - 1;
  double b = x + n;
  double c = EN_BIG;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= EN_MAX_ITER; i++)
  {
    const double a = -i * (nm1 + i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < EN_EPS)
    {
      return h * std::exp(-x);
    }
  }
  throw std::runtime_error("exp_integral: continued fraction failed to converge");
}

}  // namespace

double exp_integral(int n, double x)
{
  if (n < 1)
  {
    throw std::invalid_argument("exp_integral: order must be >= 1");
  }
  if (x < 0.0)
  {
    throw std::invalid_argument("exp_integral: negative argument");
  }
  if (x == 0.0)
  {
    if (n == 1)
    {
      throw std::invalid_argument("exp_integral: E1 diverges at x = 0");
    }
    return 1.0 / (n - 1);
  }
  return (x <= 1.0) ? expint_series(n, x) : expint_contfrac(n, x);
}

double en_moment(int n, int q, double x)
{
  if (q < 0 || x < 0.0)
  {
    throw std::invalid_argument("en_moment: q >= 0 and x >= 0 required");
  }
  if (x == 0.0)
  {
    return 0.0;
  }
  if (x <= 1.0)
  {
    // Term-by-term integral of the E_n log series.  The integration-by-
    // parts recurrence below loses all significance here: the moment is
    // O(x^{q+1}) but the recurrence forms it from O(q!) intermediates,
    // and the absolute error survives division by panel powers in
    // product-integration weights.  Every series term is O(x^{q+1}).
    const int nm1 = n - 1;
    double psi = -EULER_GAMMA;
    for (int ii = 1; ii <= nm1; ii++)
    {
      psi += 1.0 / ii;
    }
    const int P = q + nm1;
    double nm1fact = 1.0;
    for (int ii = 2; ii <= nm1; ii++)
    {
      nm1fact *= ii;
    }
    const double xp1 = std::pow(x, P + 1);
    double ans = xp1 / nm1fact *
                 ((psi - std::log(x)) / (P + 1) + 1.0 / ((P + 1.0) * (P + 1.0)));
    if (nm1 % 2 != 0)
    {
      ans = -ans;
    }
    double powx = std::pow(x, q + 1);  // x^{m+q+1} for m = 0
    double mfact = 1.0;                // m!
    for (int m = 0; m <= EN_MAX_ITER; m++)
    {
      if (m > 0)
      {
        mfact *= m;
        powx *= x;
      }
      if (m != nm1)
      {
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        const double del =
            -sgn * powx / ((m - nm1) * mfact * (m + q + 1.0));
        ans += del;
        if (m > nm1 && std::abs(del) < std::abs(ans) * EN_EPS)
        {
          return ans;
        }
      }
    }
    throw std::runtime_error("en_moment: series failed to converge");
  }
  if (q == 0)
  {
    return 1.0 / n - exp_integral(n + 1, x);
  }
  return -std::pow(x, q) * exp_integral(n + 1, x) + q * en_moment(n + 1, q - 1, x);
}

QuadratureRule gauss_legendre(int n, double a, double b)
{
  if (n < 1 || !(a < b))
  {
    throw std::invalid_argument("gauss_legendre: need n >= 1 and a < b");
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  for (int i = 0; i < m; i++)
  {
    // Chapman initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; j++)
      {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1.0e-15)
      {
        break;
      }
    }
    rule.nodes[i] = xm - xl * z;
    rule.nodes[n - 1 - i] = xm + xl * z;
    const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

PanelRule gauss_panels(double a, double b, int npanels, int order)
{
  if (npanels < 1 || order < 1 || !(a < b))
  {
    throw std::invalid_argument("gauss_panels: bad panel specification");
  }
  PanelRule rule;
  rule.order = order;
  rule.edges.resize(npanels + 1);
  for (int i = 0; i <= npanels; i++)
  {
    rule.edges[i] = a + (b - a) * i / npanels;
  }
  const QuadratureRule base = gauss_legendre(order, -1.0, 1.0);
  rule.nodes.reserve(npanels * order);
  rule.weights.reserve(npanels * order);
  for (int p = 0; p < npanels; p++)
  {
    const double lo = rule.edges[p], hi = rule.edges[p + 1];
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (int j = 0; j < order; j++)
    {
      rule.nodes.push_back(mid + hw * base.nodes[j]);
      rule.weights.push_back(hw * base.weights[j]);
    }
  }
  return rule;
}

std::vector<double> fd_weights(double x0, const std::vector<double> &nodes, int m)
{
  const int n = static_cast<int>(nodes.size());
  if (n < m + 1)
  {
    throw std::invalid_argument("fd_weights: need at least m+1 nodes");
  }
  // Fornberg's recursion; c(i, k) holds the weight of node i for the k-th
  // derivative using nodes 0..i.
  std::vector<double> c(static_cast<std::size_t>(n) * (m + 1), 0.0);
  auto C = [&](int i, int k) -> double & { return c[static_cast<std::size_t>(i) * (m + 1) + k]; };
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  C(0, 0) = 1.0;
  for (int i = 1; i < n; i++)
  {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; j++)
    {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1)
      {
        for (int k = mn; k >= 1; k--)
        {
          C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        }
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; k--)
      {
        C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      }
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; i++)
  {
    w[i] = C(i, m);
  }
  return w;
}

std::vector<double> fd_derivative(const std::vector<double> &x,
                                  const std::vector<double> &y, int width)
{
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
  {
    throw std::invalid_argument("fd_derivative: need matching grids of size >= 2");
  }
  if (width < 2)
  {
    throw std::invalid_argument("fd_derivative: width must be >= 2");
  }
  const std::size_t w = std::min<std::size_t>(width, n);
  std::vector<double> d(n);
  std::vector<double> window(w);
  for (std::size_t i = 0; i < n; i++)
  {
    std::size_t j0 = (i > w / 2) ? i - w / 2 : 0;
    j0 = std::min(j0, n - w);
    std::copy(x.begin() + j0, x.begin() + j0 + w, window.begin());
    const std::vector<double> wt = fd_weights(x[i], window, 1);
    double s = 0.0;
    for (std::size_t j = 0; j < w; j++)
    {
      s += wt[j] * y[j0 + j];
    }
    d[i] = s;
  }
  return d;
}

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> values)
  : x_(std::move(grid)), y_(std::move(values))
{
  if (x_.size() < 2 || x_.size() != y_.size())
  {
    throw std::invalid_argument("GridFunction: need matching grids of size >= 2");
  }
  for (std::size_t i = 1; i < x_.size(); i++)
  {
    if (!(x_[i] > x_[i - 1]))
    {
      throw std::invalid_argument("GridFunction: grid must be strictly increasing");
    }
  }
  d_ = fd_derivative(x_, y_);
}

std::size_t GridFunction::segment(double x) const
{
  const double lo = x_.front(), hi = x_.back();
  const double guard = 1.0e-12 * (hi - lo);
  if (x < lo - guard || x > hi + guard)
  {
    throw std::out_of_range("GridFunction: query outside grid range");
  }
  if (x <= lo)
  {
    return 0;
  }
  if (x >= hi)
  {
    return x_.size() - 2;
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double GridFunction::operator()(double x) const
{
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double GridFunction::derivative(double x) const
{
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double dh00 = (6.0 * t2 - 6.0 * t) / h;
  const double dh10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double dh01 = (-6.0 * t2 + 6.0 * t) / h;
  const double dh11 = 3.0 * t2 - 2.0 * t;
  return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

double trapz(const std::vector<double> &x, const std::vector<double> &f)
{
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); i++)
  {
    s += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  }
  return s;
}

std::vector<double> cumtrapz(const std::vector<double> &x,
                             const std::vector<double> &f)
{
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); i++)
  {
    out[i] = out[i - 1] + 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  }
  return out;
}

std::vector<double> cumtrapz_corrected(const std::vector<double> &x,
                                       const std::vector<double> &f)
{
  const std::vector<double> m = fd_derivative(x, f);
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); i++)
  {
    const double h = x[i] - x[i - 1];
    out[i] = out[i - 1] + 0.5 * h * (f[i] + f[i - 1]) +
             h * h / 12.0 * (m[i - 1] - m[i]);
  }
  return out;
}

std::vector<double> linspace(double a, double b, std::size_t n)
{
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; i++)
  {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1)
  {
    out.back() = b;
  }
  return out;
}

}  // namespace bioconvect
