#pragma once

namespace ggcport::specfun {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Modified Bessel function of the second kind K_order(x), x > 0.
/// Symmetric in the order: K_order = K_{-order}.
///
/// When the true value exceeds double range (tiny x with large |order|) the
/// result saturates at the largest finite double and `overflow` is set.
double bessel_k(double order, double x, bool& overflow);
double bessel_k(double order, double x);

/// ln K_order(x). Stays finite where K itself would over- or underflow,
/// which is what density ratios and Laplace transforms actually need.
double log_bessel_k(double order, double x);

}  // namespace ggcport::specfun
