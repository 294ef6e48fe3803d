#pragma once

#include <cmath>

namespace ballred {

/// Tolerance for membership of the boundary sphere in unit-ball coordinates.
inline constexpr double kBoundaryTol = 1e-12;

/// Guard offset kept from rho0 and from 1 by scans and bracket constructions;
/// the fibered quantities diverge at both endpoints.
inline constexpr double kGuardOffset = 1e-6;

/// Golden-ratio radius: the positive root of rho^2 + rho - 1, so 1 - rho^2 = rho.
inline const double kRhoBar = (std::sqrt(5.0) - 1.0) / 2.0;

/// Normalisation of the standard bubble, (N(N-2))^{(N-2)/4}.
inline double bubble_norm(int dim) {
  return std::pow(static_cast<double>(dim) * (dim - 2), 0.25 * (dim - 2));
}

/// Surface area of the unit sphere S^k embedded in R^{k+1}.
inline double sphere_area(int k) {
  return 2.0 * std::pow(M_PI, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

}  // namespace ballred
