#include "ggcport/distances.hpp"

#include <algorithm>
#include <cmath>

namespace ggcport {

namespace {

struct GridMetrics {
  double kolmogorov = 0.0;
  double total_variation = 0.0;
  double cdf_l1 = 0.0;     // integral of |F1 - F2| over the grid
  double fm_raw = 0.0;     // best clipped-ramp discrepancy before error margins
};

// Integral of |linear segment| from (0, y0) to (w, y1).
double abs_linear_integral(double y0, double y1, double w) {
  if ((y0 >= 0.0) == (y1 >= 0.0)) return 0.5 * std::fabs(y0 + y1) * w;
  const double t = y0 / (y0 - y1);
  return 0.5 * w * (std::fabs(y0) * t + std::fabs(y1) * (1.0 - t));
}

GridMetrics metrics_on(const DensityGrid& g1, const DensityGrid& g2) {
  GridMetrics m;
  const std::size_t n = g1.size();
  const double h = g1.spacing();

  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double d = std::fabs(g1.cum_mass(j) - g2.cum_mass(j));
    m.kolmogorov = std::max(m.kolmogorov, d);
    m.cdf_l1 += d * h;
  }

  // Cell masses give the L1 difference exactly wherever the density
  // difference keeps one sign; cells straddling a sign change get a
  // piecewise-linear refinement instead.
  double tv = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double base = std::fabs(g1.mass()[j] - g2.mass()[j]);
    if (j == 0 || j + 1 == n) {
      tv += base;
      continue;
    }
    const double d_prev = g1.pdf()[j - 1] - g2.pdf()[j - 1];
    const double d_mid = g1.pdf()[j] - g2.pdf()[j];
    const double d_next = g1.pdf()[j + 1] - g2.pdf()[j + 1];
    const auto sgn = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
    const bool crossing =
        sgn(d_prev) * sgn(d_mid) < 0 || sgn(d_mid) * sgn(d_next) < 0;
    if (!crossing) {
      tv += base;
    } else {
      const double e_lo = 0.5 * (d_prev + d_mid);
      const double e_hi = 0.5 * (d_mid + d_next);
      const double refined = abs_linear_integral(e_lo, d_mid, 0.5 * h) +
                             abs_linear_integral(d_mid, e_hi, 0.5 * h);
      // the cell's L1 difference can never exceed the total cell mass
      tv += std::min(std::max(base, refined), g1.mass()[j] + g2.mass()[j]);
    }
  }
  m.total_variation = 0.5 * tv;

  // Clipped-ramp family h_c(x) = clip(x - c, -1, 1), scanned over c.
  const std::size_t scan = 1024;
  const double c_lo = -1.0, c_hi = g1.upper() + 1.0;
  for (std::size_t k = 0; k <= scan; ++k) {
    const double c = c_lo + (c_hi - c_lo) * static_cast<double>(k) / scan;
    double t = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double hc = std::clamp(g1.node(j) - c, -1.0, 1.0);
      t += hc * (g1.mass()[j] - g2.mass()[j]);
    }
    m.fm_raw = std::max(m.fm_raw, std::fabs(t));
  }
  return m;
}

}  // namespace

DistanceReport distance_report(const MixingLaw& law1, const MixingLaw& law2,
                               const DensityGridSpec& spec) {
  const double upper =
      std::max(density_upper_limit(law1, spec), density_upper_limit(law2, spec));

  DensityGridSpec coarse_spec = spec;
  coarse_spec.points = spec.points / 2 + 1;

  const DensityGrid f1 = build_density_grid(law1, spec, upper);
  const DensityGrid f2 = build_density_grid(law2, spec, upper);
  const DensityGrid c1 = build_density_grid(law1, coarse_spec, upper);
  const DensityGrid c2 = build_density_grid(law2, coarse_spec, upper);

  const GridMetrics fine = metrics_on(f1, f2);
  const GridMetrics coarse = metrics_on(c1, c2);

  const double tails = f1.truncated_mass() + f2.truncated_mass();
  const double tail_l1 = tails * f1.upper();

  DistanceReport report;
  report.grid = spec;
  report.kolmogorov = fine.kolmogorov;
  report.kolmogorov_error =
      std::fabs(fine.kolmogorov - coarse.kolmogorov) + tails + 1e-12;
  report.total_variation = fine.total_variation;
  report.total_variation_error =
      std::fabs(fine.total_variation - coarse.total_variation) + tails + 1e-12;

  // Within-cell placement of mass is known only to half a cell, which costs
  // at most h/2 per law against a Lipschitz-1 test function.
  report.fm_lower = std::max(0.0, fine.fm_raw - f1.spacing() - tails);
  const double upper_via_cdf = fine.cdf_l1 + std::fabs(fine.cdf_l1 - coarse.cdf_l1) +
                               tail_l1 + 1e-10;
  const double upper_via_tv =
      2.0 * (report.total_variation + report.total_variation_error);
  report.fm_upper = std::min({2.0, upper_via_cdf, upper_via_tv});
  report.fm_upper = std::max(report.fm_upper, report.fm_lower);
  return report;
}

double kolmogorov(const MixingLaw& law1, const MixingLaw& law2, const DensityGridSpec& spec) {
  const DistanceReport r = distance_report(law1, law2, spec);
  if (r.kolmogorov_error > spec.max_error)
    throw grid_too_coarse_error("kolmogorov: error bound " +
                                std::to_string(r.kolmogorov_error) + " exceeds ceiling");
  return r.kolmogorov;
}

double total_variation(const MixingLaw& law1, const MixingLaw& law2,
                       const DensityGridSpec& spec) {
  const DistanceReport r = distance_report(law1, law2, spec);
  if (r.total_variation_error > spec.max_error)
    throw grid_too_coarse_error("total_variation: error bound " +
                                std::to_string(r.total_variation_error) + " exceeds ceiling");
  return r.total_variation;
}

std::pair<double, double> fortet_mourier_bracket(const MixingLaw& law1, const MixingLaw& law2,
                                                 const DensityGridSpec& spec) {
  const DistanceReport r = distance_report(law1, law2, spec);
  return {r.fm_lower, r.fm_upper};
}

}  // namespace ggcport
