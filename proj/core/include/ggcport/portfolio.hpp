#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ggcport/extended_real.hpp"
#include "ggcport/mixing.hpp"
#include "ggcport/model.hpp"

namespace ggcport {

/// Raised by the one-dimensional minimizer when the minimizer is pulled into
/// the left endpoint of its interval with the objective still decreasing
/// there, i.e. when no interior (regular) solution exists.
class boundary_attraction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar reductions of a model/market pair.
struct ModelConstants {
  double cal_a = 0.0;      ///< gamma^T Sigma^{-1} gamma, >= 0
  double cal_b = 0.0;      ///< gamma^T Sigma^{-1} (mu - 1 r_f)
  double cal_c = 0.0;      ///< (mu - 1 r_f)^T Sigma^{-1} (mu - 1 r_f), > 0
  double s_hat = 0.0;      ///< integrability number of the mixing law, <= 0
  double theta_hat = 0.0;  ///< sqrt((cal_a - 2 s_hat) / cal_c)
};

struct MinimizeDiagnostics {
  std::size_t iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::string message;
};

struct PortfolioSolution {
  double q_min = 0.0;
  Eigen::VectorXd x_star;
  double q_value = 0.0;  ///< Q(q_min)
  bool regular = false;
  MinimizeDiagnostics diagnostics;
};

struct MinimizeResult {
  double q_min = 0.0;
  double q_value = 0.0;
  std::size_t iterations = 0;
};

/// Sigma = A A^T; scalar constants by factor-and-solve. Throws on a
/// non-SPD/near-singular Sigma and on mu - 1 r_f = 0.
ModelConstants model_constants(const NmvmModel& model, const MarketSpec& market);

/// Q(theta) = exp(C theta) * L_Z(A/2 - theta^2 C / 2). Signalled +inf when
/// the transform diverges at the induced argument.
ExtendedReal q_objective(const ModelConstants& constants, const MixingLaw& law, double theta);

/// Minimize Q over (-theta_hat, 0) by golden-section with parabolic steps
/// (Q is strictly convex there). Throws boundary_attraction_error when the
/// minimizer is squeezed against -theta_hat.
MinimizeResult minimize_q(const ModelConstants& constants, const MixingLaw& law, double tol);

/// The closed-form optimal portfolio
///   x* = (1 / (a W0)) [Sigma^{-1} gamma - q_min Sigma^{-1} (mu - 1 r_f)].
/// Boundary attraction is reported as regular = false, not an exception.
PortfolioSolution optimal_portfolio(const NmvmModel& model, const MarketSpec& market);

/// Closed-form expected utility of an arbitrary portfolio x:
///   EU(x) = -exp(-a W0 (1 + r_f) - a W0 x^T (mu - 1 r_f))
///           * L_Z(a W0 x^T gamma - (a W0)^2 x^T Sigma x / 2).
/// Signalled -inf when the transform diverges at the induced argument.
ExtendedReal expected_utility(const NmvmModel& model, const MarketSpec& market,
                              const Eigen::VectorXd& x);

}  // namespace ggcport
