#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ggcport/mixing.hpp"

namespace ggcport {

/// Raised when a grid's self-reported discretization error exceeds the
/// configured ceiling.
class grid_too_coarse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DensityGridSpec {
  std::size_t points = 4096;  ///< grid nodes; >= 16
  double tail_mass = 1e-12;   ///< truncation target for the upper limit
  double max_error = 1e-4;    ///< ceiling on the self-reported density error
};

/// Uniform grid [0, upper] carrying node density values and per-cell masses
/// for a mixing law. Cells are centered at the nodes; the first and last
/// cells are half-width.
class DensityGrid {
 public:
  double spacing() const { return spacing_; }
  std::size_t size() const { return pdf_.size(); }
  double upper() const { return spacing_ * static_cast<double>(size() - 1); }
  double node(std::size_t i) const { return spacing_ * static_cast<double>(i); }

  const std::vector<double>& pdf() const { return pdf_; }
  const std::vector<double>& mass() const { return mass_; }

  /// Linear interpolation of the node values; zero outside [0, upper].
  double pdf_at(double x) const;

  /// Piecewise-linear CDF built from the cell masses.
  double cdf_at(double x) const;

  /// Right edge of cell j and cumulative mass up to it.
  double edge(std::size_t j) const;
  double cum_mass(std::size_t j) const;

  double total_mass() const;
  /// Mass not captured by the grid (truncation beyond `upper`).
  double truncated_mass() const { return truncated_mass_; }
  /// Self-reported sup-norm error estimate for the node density values.
  double error_bound() const { return error_bound_; }

 private:
  friend DensityGrid build_density_grid_impl(const MixingLaw&, const DensityGridSpec&, double,
                                             bool);
  double spacing_ = 0.0;
  std::vector<double> pdf_;
  std::vector<double> mass_;
  std::vector<double> cum_;
  double truncated_mass_ = 0.0;
  double error_bound_ = 0.0;
};

/// Upper truncation point used for `law` under `spec` (shared-grid
/// construction between two laws takes the max).
double density_upper_limit(const MixingLaw& law, const DensityGridSpec& spec);

/// Build the grid. `forced_upper` overrides the automatic truncation point
/// when positive.
DensityGrid build_density_grid(const MixingLaw& law, const DensityGridSpec& spec = {},
                               double forced_upper = 0.0);

/// Density of the law at x > 0. Closed form for GIG and single-gamma laws;
/// grid convolution (linearly interpolated) for multi-component laws, for
/// which a too-coarse grid raises grid_too_coarse_error.
double density(const MixingLaw& law, double x, const DensityGridSpec& spec = {});

/// Closed-form component densities, exposed for reuse by tests and tools.
double gamma_pdf(double x, double shape, double scale);
double gig_pdf(double x, const Gig& law);

}  // namespace ggcport
