#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ggcport/mixing.hpp"
#include "ggcport/model.hpp"

namespace ggcport {

/// Reproducible i.i.d. draws from a mixing law: identical (law, n, seed)
/// yields identical values.
struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string law_descriptor;
  /// Envelope acceptance rate of the rejection sampler (1 for laws sampled
  /// exactly as gamma sums).
  double envelope_acceptance = 1.0;
};

SampleBatch sample_mixing(const MixingLaw& law, std::size_t n, std::uint64_t seed);

/// Draws X_k = mu + gamma Z_k + sqrt(Z_k) A N_k. The Z_k coincide with
/// sample_mixing(model.law, n, seed).
std::vector<Eigen::VectorXd> sample_nmvm(const NmvmModel& model, std::size_t n,
                                         std::uint64_t seed);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Monte-Carlo estimate of E[-exp(-a W(x))] with W(x) the wealth of
/// portfolio x. Deterministic per (model, market, x, n, seed).
MonteCarloEstimate mc_expected_utility(const NmvmModel& model, const MarketSpec& market,
                                       const Eigen::VectorXd& x, std::size_t n,
                                       std::uint64_t seed);

/// Columnar text export: one value per line, header comment with law
/// descriptor and seed.
std::string format_sample_batch(const SampleBatch& batch);

}  // namespace ggcport
