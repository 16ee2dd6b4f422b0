// Copyright (c) 2026 The bioconvect Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bioconvect/parameters.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bioconvect
{

namespace
{

void require(bool ok, const char *what, double value)
{
  if (ok)
    return;
  std::ostringstream msg;
  msg << "invalid parameters: " << what << " (got " << value << ")";
  throw std::invalid_argument(msg.str());
}

}  // namespace

void Parameters::validate() const
{
  require(std::isfinite(Sc) && Sc > 0.0, "Sc must be > 0", Sc);
  require(std::isfinite(Vc) && Vc > 0.0, "Vc must be > 0", Vc);
  require(std::isfinite(kappa) && kappa > 0.0, "kappa must be > 0", kappa);
  require(std::isfinite(omega) && omega >= 0.0 && omega <= 1.0,
          "omega must lie in [0, 1]", omega);
  require(std::isfinite(Lt) && Lt > 0.0, "Lt must be > 0", Lt);
  require(std::isfinite(Ta) && Ta >= 0.0, "Ta must be >= 0", Ta);
  require(std::isfinite(R), "R must be finite", R);
  require(taxis.critical_intensity > 0.0,
          "critical intensity must be > 0", taxis.critical_intensity);
}

}  // namespace bioconvect
