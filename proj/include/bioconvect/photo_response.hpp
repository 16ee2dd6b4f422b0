// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BIOCONVECT_PHOTO_RESPONSE_HPP
#define BIOCONVECT_PHOTO_RESPONSE_HPP

namespace bioconvect
{

// Taxis response M(G) = a1 sin((3pi/2) Lambda) - a2 sin((pi/2) Lambda),
// Lambda(G) = (G/c1) exp[c2 (c1 - G)].  The constants are configurable
// because the response shape is species dependent; the defaults are the
// standard instance used throughout.  Note the default instance has its
// zero crossing slightly below critical_intensity = 1 (near G = 0.9948),
// so M(1) is a small negative number, not zero.
struct TaxisModel
{
  double critical_intensity = 1.0;
  double a1 = 0.8;
  double a2 = 0.1;
  double c1 = 2.5;
  double c2 = 0.32;

  double lambda(double G) const;
  double lambda_derivative(double G) const;
  double taxis(double G) const;
  double taxis_derivative(double G) const;
};

}  // namespace bioconvect

#endif  // BIOCONVECT_PHOTO_RESPONSE_HPP
