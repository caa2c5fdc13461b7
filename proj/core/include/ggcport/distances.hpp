#pragma once

#include <utility>

#include "ggcport/density_grid.hpp"
#include "ggcport/mixing.hpp"

namespace ggcport {

/// Probability metrics between two mixing laws, computed on one shared grid.
struct DistanceReport {
  double kolmogorov = 0.0;
  double total_variation = 0.0;
  double fm_lower = 0.0;  ///< certified lower bound for the Fortet-Mourier distance
  double fm_upper = 0.0;  ///< certified upper bound
  double kolmogorov_error = 0.0;  ///< discretization error bound
  double total_variation_error = 0.0;
  DensityGridSpec grid;
};

DistanceReport distance_report(const MixingLaw& law1, const MixingLaw& law2,
                               const DensityGridSpec& spec = {});

/// sup_x |F1(x) - F2(x)|, with CDFs from cumulative integration of the
/// densities. Raises grid_too_coarse_error when the error bound exceeds the
/// configured ceiling.
double kolmogorov(const MixingLaw& law1, const MixingLaw& law2,
                  const DensityGridSpec& spec = {});

/// 0.5 * integral of |f1 - f2| on the shared grid.
double total_variation(const MixingLaw& law1, const MixingLaw& law2,
                       const DensityGridSpec& spec = {});

/// Certified bracket (lower, upper) around the Fortet-Mourier distance.
std::pair<double, double> fortet_mourier_bracket(const MixingLaw& law1, const MixingLaw& law2,
                                                 const DensityGridSpec& spec = {});

}  // namespace ggcport
