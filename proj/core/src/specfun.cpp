#include "ggcport/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ggcport::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Hankel's large-argument expansion of log K_nu(x). Usable when the series
// terms fall below double precision before they start growing; with nu <= 15
// that holds for x >= 600, well past the point where K underflows.
double log_bessel_k_large_x(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 16; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * x * k);
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return -x + 0.5 * std::log(kPi / (2.0 * x)) + std::log(sum);
}

// Leading small-argument behaviour K_nu(x) ~ (1/2) Gamma(nu) (2/x)^nu for
// nu > 0. Only reached where the direct evaluation overflows, i.e. where the
// neglected terms are O(x^2/nu) relative.
double log_bessel_k_small_x(double nu, double x) {
  double correction = 0.0;
  if (nu > 1.0) correction = std::log1p(x * x / (4.0 * (nu - 1.0)));
  return std::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 / x) + correction;
}

void check_positive_x(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: argument must be > 0");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
  return std::lgamma(x);
}

double log_bessel_k(double order, double x) {
  check_positive_x(x);
  const double nu = std::fabs(order);
  if (x >= 600.0 && nu <= 15.0) return log_bessel_k_large_x(nu, x);
  try {
    const double v = boost::math::cyl_bessel_k(nu, x);
    if (std::isfinite(v) && v > 0.0) return std::log(v);
    if (v == 0.0) return log_bessel_k_large_x(nu, x);
  } catch (const std::exception&) {
    // overflow inside boost; fall through to the asymptotic form
  }
  return log_bessel_k_small_x(nu, x);
}

double bessel_k(double order, double x, bool& overflow) {
  check_positive_x(x);
  overflow = false;
  const double nu = std::fabs(order);
  if (x < 600.0 || nu > 15.0) {
    try {
      return boost::math::cyl_bessel_k(nu, x);
    } catch (const std::exception&) {
      // overflow regime; see below
    }
    const double lk = log_bessel_k_small_x(nu, x);
    if (lk < std::log(std::numeric_limits<double>::max())) return std::exp(lk);
    overflow = true;
    return std::numeric_limits<double>::max();
  }
  return std::exp(log_bessel_k_large_x(nu, x));
}

double bessel_k(double order, double x) {
  bool overflow = false;
  return bessel_k(order, x, overflow);
}

}  // namespace ggcport::specfun
