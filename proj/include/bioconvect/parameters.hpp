// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BIOCONVECT_PARAMETERS_HPP
#define BIOCONVECT_PARAMETERS_HPP

#include "bioconvect/photo_response.hpp"

namespace bioconvect
{

// Dimensionless problem definition.  R is the bioconvective Rayleigh
// number; it is the eigenvalue in stability solves and an input only for
// growth-rate evaluations.
struct Parameters
{
  double Sc = 20.0;     // Schmidt number
  double Vc = 20.0;     // dimensionless swimming speed
  double R = 0.0;       // Rayleigh number (eigenvalue unless fixed)
  double Ta = 0.0;      // Taylor number
  double kappa = 0.5;   // extinction coefficient
  double omega = 0.0;   // scattering albedo
  double Lt = 1.0;      // top collimated intensity
  TaxisModel taxis;

  // Throws std::invalid_argument naming the violated bound.
  void validate() const;
};

}  // namespace bioconvect

#endif  // BIOCONVECT_PARAMETERS_HPP
