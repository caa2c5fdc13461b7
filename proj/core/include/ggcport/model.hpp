#pragma once

#include <Eigen/Dense>

#include "ggcport/mixing.hpp"

namespace ggcport {

/// Return model X = mu + gamma Z + sqrt(Z) A N with nonnegative mixing
/// variable Z and standard normal N independent of Z.
struct NmvmModel {
  Eigen::VectorXd mu;
  Eigen::VectorXd gamma_vec;
  Eigen::MatrixXd a_matrix;  ///< symmetric positive definite; Sigma = A A^T
  MixingLaw law = FiniteGammaConvolution(0.0, {{1.0, 1.0}});

  Eigen::Index dimension() const { return mu.size(); }
};

/// Market data for the one-period utility problem under U(x) = -exp(-a x).
struct MarketSpec {
  double r_f = 0.0;            ///< risk-free rate
  double risk_aversion = 1.0;  ///< a > 0
  double initial_wealth = 1.0; ///< W0 > 0
};

}  // namespace ggcport
