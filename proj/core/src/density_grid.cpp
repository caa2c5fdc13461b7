#include "ggcport/density_grid.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ggcport/specfun.hpp"

namespace ggcport {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

bool is_single_gamma(const FiniteGammaConvolution& law) { return law.components().size() == 1; }

FiniteGammaConvolution as_convolution(const MixingLaw& law) {
  if (std::holds_alternative<AtomicGgc>(law))
    return to_gamma_convolution(std::get<AtomicGgc>(law).generator());
  return std::get<FiniteGammaConvolution>(law);
}

double fgc_mean(const FiniteGammaConvolution& law) {
  double m = law.tau();
  for (const auto& c : law.components()) m += c.shape * c.scale;
  return m;
}

double fgc_sd(const FiniteGammaConvolution& law) {
  double v = 0.0;
  for (const auto& c : law.components()) v += c.shape * c.scale * c.scale;
  return std::sqrt(v);
}

// Upper truncation point for a multi-component convolution: the pointwise
// density bound and its tail integral must both fall below tail_mass.
double convolution_upper(const FiniteGammaConvolution& law, double tail_mass) {
  const auto& comps = law.components();
  const double beta_m = comps.front().scale;
  double rho = 0.0, log_c = 0.0, v = 0.0;
  for (const auto& c : comps) {
    rho += c.shape;
    log_c += c.shape * std::log(beta_m / c.scale);
    if (c.scale != beta_m) v = std::max(v, 1.0 - beta_m / c.scale);
  }
  const FiniteGammaConvolution shiftless(0.0, comps);
  double u = fgc_mean(shiftless) + 10.0 * fgc_sd(shiftless) + beta_m;
  // Tail integral of the bound: C (1-v)^{-rho} Q(rho, u (1-v)/beta_m).
  const double log_pref = log_c - rho * std::log1p(-v);
  for (int i = 0; i < 200; ++i) {
    const double y = u * (1.0 - v) / beta_m;
    const double log_tail = log_pref + std::log(boost::math::gamma_q(rho, y));
    const double log_point = log_c - rho * std::log(beta_m) - specfun::log_gamma(rho) +
                             (rho - 1.0) * std::log(u) - u * (1.0 - v) / beta_m;
    if (log_tail < std::log(tail_mass) && log_point < std::log(tail_mass)) break;
    u *= 1.25;
  }
  return law.tau() + u;
}

double gamma_upper(double shape, double scale, double tau, double tail_mass) {
  const double y = boost::math::gamma_q_inv(shape, std::max(tail_mass, 1e-300));
  return tau + scale * y + scale;
}

double gig_mode(const Gig& law) {
  const double lm1 = law.lambda() - 1.0;
  return (lm1 + std::sqrt(lm1 * lm1 + law.a() * law.a() * law.b() * law.b())) /
         (law.b() * law.b());
}

double gig_upper(const Gig& law, double tail_mass) {
  const double b2 = law.b() * law.b();
  double u = 4.0 * std::max({gig_mode(law), 2.0 * (law.lambda() - 1.0) / b2, 1.0 / b2, 1.0});
  for (int i = 0; i < 400; ++i) {
    const double rate = 0.5 * b2 - std::max(law.lambda() - 1.0, 0.0) / u;
    const double tail = gig_pdf(u, law) / rate;
    if (rate > 0.0 && tail < tail_mass) break;
    u *= 1.25;
  }
  return u;
}

struct CellRange {
  // Cell j covers [lo(j), hi(j)] with nodes at j*h; first and last cells are
  // half width.
  double h;
  std::size_t n;
  double lo(std::size_t j) const { return j == 0 ? 0.0 : (j - 0.5) * h; }
  double hi(std::size_t j) const {
    return j + 1 == n ? (n - 1) * h : (j + 0.5) * h;
  }
};

// Node-mass vector of one gamma component (optionally shifted by tau):
// exact cell masses, placed on the two nearest nodes so that the cell's mass
// and first moment are both preserved.
std::vector<double> component_node_mass(const GammaComponent& c, double tau,
                                        const CellRange& cells) {
  std::vector<double> node_mass(cells.n, 0.0);
  const double inv_scale = 1.0 / c.scale;
  double p_lo = 0.0;  // CDF at the left edge of the current cell
  double m_lo = 0.0;  // first-moment CDF (via shape+1) at the left edge
  const double moment_scale = c.shape * c.scale;
  for (std::size_t j = 0; j < cells.n; ++j) {
    const double r = cells.hi(j) - tau;
    double p_hi = 0.0, m_hi = 0.0;
    if (r > 0.0) {
      p_hi = boost::math::gamma_p(c.shape, r * inv_scale);
      m_hi = boost::math::gamma_p(c.shape + 1.0, r * inv_scale);
    }
    const double mass = p_hi - p_lo;
    if (mass > 0.0) {
      // centroid of the component's mass within the cell, in grid units
      const double centroid = tau + moment_scale * (m_hi - m_lo) / mass;
      const double theta = centroid / cells.h - static_cast<double>(j);
      if (theta >= 0.0) {
        const double up = (j + 1 < cells.n) ? theta : 0.0;
        node_mass[j] += mass * (1.0 - up);
        if (j + 1 < cells.n) node_mass[j + 1] += mass * up;
      } else {
        const double down = (j > 0) ? -theta : 0.0;
        node_mass[j] += mass * (1.0 - down);
        if (j > 0) node_mass[j - 1] += mass * down;
      }
    }
    p_lo = p_hi;
    m_lo = m_hi;
  }
  return node_mass;
}

std::vector<double> convolve_truncated(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  std::size_t a_lo = n, a_hi = 0, b_lo = n, b_hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0.0) {
      a_lo = std::min(a_lo, i);
      a_hi = i;
    }
    if (b[i] != 0.0) {
      b_lo = std::min(b_lo, i);
      b_hi = i;
    }
  }
  if (a_lo > a_hi || b_lo > b_hi) return out;
  for (std::size_t i = a_lo; i <= a_hi; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const std::size_t j_hi = std::min(b_hi, n - 1 - i);
    for (std::size_t j = b_lo; j <= j_hi; ++j) out[i + j] += ai * b[j];
  }
  return out;
}

// Node density from cell masses: the cell average M/h corrected by the
// discrete second difference, which removes the O(h^2) averaging bias.
std::vector<double> masses_to_pdf(const std::vector<double>& m, double h) {
  const std::size_t n = m.size();
  std::vector<double> pdf(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double second = m[j + 1] - 2.0 * m[j] + m[j - 1];
    pdf[j] = std::max(0.0, m[j] / h - second / (24.0 * h));
  }
  if (n >= 3) pdf[0] = std::max(0.0, 2.0 * pdf[1] - pdf[2]);
  if (n >= 2) pdf[n - 1] = m[n - 1] / (0.5 * h);
  return pdf;
}

}  // namespace

double gamma_pdf(double x, double shape, double scale) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return 1.0 / scale;
    return std::numeric_limits<double>::infinity();
  }
  return std::exp((shape - 1.0) * std::log(x) - x / scale - shape * std::log(scale) -
                  specfun::log_gamma(shape));
}

double gig_pdf(double x, const Gig& law) {
  if (x <= 0.0) return 0.0;
  const double ab = law.a() * law.b();
  const double log_norm = law.lambda() * (std::log(law.b()) - std::log(law.a())) - kLog2 -
                          specfun::log_bessel_k(law.lambda(), ab);
  const double log_val = log_norm + (law.lambda() - 1.0) * std::log(x) -
                         0.5 * (law.a() * law.a() / x + law.b() * law.b() * x);
  return std::exp(log_val);
}

double DensityGrid::pdf_at(double x) const {
  if (x < 0.0 || x > upper()) return 0.0;
  const double u = x / spacing_;
  const std::size_t j = std::min(static_cast<std::size_t>(u), size() - 2);
  const double frac = u - static_cast<double>(j);
  return pdf_[j] * (1.0 - frac) + pdf_[j + 1] * frac;
}

double DensityGrid::edge(std::size_t j) const {
  return j + 1 == size() ? upper() : (static_cast<double>(j) + 0.5) * spacing_;
}

double DensityGrid::cum_mass(std::size_t j) const { return cum_[j]; }

double DensityGrid::cdf_at(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= upper()) return cum_.back();
  // locate the cell containing x and interpolate linearly inside it
  const double u = x / spacing_ + 0.5;
  std::size_t j = std::min(static_cast<std::size_t>(u), size() - 1);
  const double lo = j == 0 ? 0.0 : (j - 0.5) * spacing_;
  const double hi = edge(j);
  const double before = j == 0 ? 0.0 : cum_[j - 1];
  const double frac = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
  return before + frac * mass_[j];
}

double DensityGrid::total_mass() const { return cum_.empty() ? 0.0 : cum_.back(); }

double density_upper_limit(const MixingLaw& law, const DensityGridSpec& spec) {
  if (std::holds_alternative<Gig>(law))
    return gig_upper(std::get<Gig>(law), spec.tail_mass);
  const FiniteGammaConvolution conv = as_convolution(law);
  if (is_single_gamma(conv)) {
    const auto& c = conv.components().front();
    return gamma_upper(c.shape, c.scale, conv.tau(), spec.tail_mass);
  }
  return convolution_upper(conv, spec.tail_mass);
}

DensityGrid build_density_grid_impl(const MixingLaw& law, const DensityGridSpec& spec,
                                    double forced_upper, bool estimate_error) {
  if (spec.points < 8) throw std::invalid_argument("DensityGridSpec: needs >= 8 points");
  const double upper = forced_upper > 0.0 ? forced_upper : density_upper_limit(law, spec);

  DensityGrid grid;
  const std::size_t n = spec.points;
  const double h = upper / static_cast<double>(n - 1);
  grid.spacing_ = h;
  const CellRange cells{h, n};

  if (std::holds_alternative<Gig>(law)) {
    const Gig& g = std::get<Gig>(law);
    grid.pdf_.resize(n);
    grid.mass_.resize(n);
    for (std::size_t j = 0; j < n; ++j) grid.pdf_[j] = gig_pdf(grid.node(j), g);
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = cells.lo(j), hi = cells.hi(j);
      const double mid = 0.5 * (lo + hi);
      grid.mass_[j] =
          (hi - lo) / 6.0 * (gig_pdf(lo, g) + 4.0 * gig_pdf(mid, g) + gig_pdf(hi, g));
    }
    if (estimate_error) {
      double worst = 0.0;
      const std::size_t stride = std::max<std::size_t>(1, n / 512);
      for (std::size_t j = 0; j + 1 < n; j += stride) {
        const double mid = grid.node(j) + 0.5 * h;
        worst = std::max(worst, std::fabs(gig_pdf(mid, g) - 0.5 * (grid.pdf_[j] + grid.pdf_[j + 1])));
      }
      grid.error_bound_ = worst + spec.tail_mass;
    }
    grid.truncated_mass_ = spec.tail_mass;
  } else {
    const FiniteGammaConvolution conv = as_convolution(law);
    if (is_single_gamma(conv)) {
      const auto& c = conv.components().front();
      grid.pdf_.resize(n);
      grid.mass_.resize(n);
      double p_lo = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = grid.node(j) - conv.tau();
        double v = gamma_pdf(x, c.shape, c.scale);
        const double r = cells.hi(j) - conv.tau();
        const double p_hi = r > 0.0 ? boost::math::gamma_p(c.shape, r / c.scale) : 0.0;
        grid.mass_[j] = std::max(0.0, p_hi - p_lo);
        p_lo = p_hi;
        if (!std::isfinite(v)) v = grid.mass_[j] / (cells.hi(j) - cells.lo(j));
        grid.pdf_[j] = v;
      }
      if (estimate_error) {
        double worst = 0.0;
        const std::size_t stride = std::max<std::size_t>(1, n / 512);
        for (std::size_t j = 0; j + 1 < n; j += stride) {
          const double mid = grid.node(j) + 0.5 * h;
          const double f = gamma_pdf(mid - conv.tau(), c.shape, c.scale);
          if (std::isfinite(f))
            worst = std::max(worst, std::fabs(f - 0.5 * (grid.pdf_[j] + grid.pdf_[j + 1])));
        }
        grid.error_bound_ = worst + spec.tail_mass;
      }
      grid.truncated_mass_ = spec.tail_mass;
    } else {
      std::vector<double> acc;
      double expected_mass = 1.0;
      bool first = true;
      for (const auto& c : conv.components()) {
        std::vector<double> comp = component_node_mass(c, first ? conv.tau() : 0.0, cells);
        acc = first ? std::move(comp) : convolve_truncated(acc, comp);
        first = false;
      }
      double captured = 0.0;
      for (double m : acc) captured += m;
      grid.truncated_mass_ = std::max(0.0, expected_mass - captured);
      grid.mass_ = std::move(acc);
      grid.pdf_ = masses_to_pdf(grid.mass_, h);
      if (estimate_error) {
        DensityGridSpec coarse_spec = spec;
        coarse_spec.points = n / 2 + 1;
        DensityGrid coarse = build_density_grid_impl(law, coarse_spec, upper, false);
        double worst = 0.0;
        for (std::size_t k = 1; k + 1 < coarse.size(); ++k) {
          worst = std::max(worst, std::fabs(coarse.pdf()[k] - grid.pdf_[2 * k]));
        }
        grid.error_bound_ = worst + grid.truncated_mass_;
      }
    }
  }

  grid.cum_.resize(n);
  double cum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cum += grid.mass_[j];
    grid.cum_[j] = cum;
  }
  return grid;
}

DensityGrid build_density_grid(const MixingLaw& law, const DensityGridSpec& spec,
                               double forced_upper) {
  return build_density_grid_impl(law, spec, forced_upper, true);
}

double density(const MixingLaw& law, double x, const DensityGridSpec& spec) {
  if (!(x > 0.0)) throw std::domain_error("density: x must be > 0");
  if (std::holds_alternative<Gig>(law)) return gig_pdf(x, std::get<Gig>(law));
  const FiniteGammaConvolution conv = as_convolution(law);
  if (is_single_gamma(conv)) {
    const auto& c = conv.components().front();
    const double v = gamma_pdf(x - conv.tau(), c.shape, c.scale);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  }
  const DensityGrid grid = build_density_grid(law, spec);
  if (grid.error_bound() > spec.max_error)
    throw grid_too_coarse_error("density: discretization error estimate " +
                                std::to_string(grid.error_bound()) + " exceeds ceiling " +
                                std::to_string(spec.max_error));
  return grid.pdf_at(x);
}

}  // namespace ggcport
