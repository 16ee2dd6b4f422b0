// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bioconvect/photo_response.hpp"

#include <cmath>

namespace bioconvect
{

double TaxisModel::lambda(double G) const
{
  return (G / c1) * std::exp(c2 * (c1 - G));
}

double TaxisModel::lambda_derivative(double G) const
{
  return (1.0 / c1) * std::exp(c2 * (c1 - G)) * (1.0 - c2 * G);
}

double TaxisModel::taxis(double G) const
{
  const double lam = lambda(G);
  return a1 * std::sin(1.5 * M_PI * lam) - a2 * std::sin(0.5 * M_PI * lam);
}

double TaxisModel::taxis_derivative(double G) const
{
  const double lam = lambda(G);
  return (a1 * 1.5 * M_PI * std::cos(1.5 * M_PI * lam) -
          a2 * 0.5 * M_PI * std::cos(0.5 * M_PI * lam)) *
         lambda_derivative(G);
}

}  // namespace bioconvect
