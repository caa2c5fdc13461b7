#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ggcport/sampling.hpp"
#include "support/oracles.hpp"

using namespace ggcport;
using ggcport::testing::LawRng;

namespace {

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size() - 1);
}

// standard error of the sample variance from the fourth central moment
double variance_stderr(const std::vector<double>& v, double mean, double var) {
  double m4 = 0.0;
  for (double x : v) {
    const double d = (x - mean) * (x - mean);
    m4 += d * d;
  }
  m4 /= static_cast<double>(v.size());
  return std::sqrt(std::max(0.0, m4 - var * var) / static_cast<double>(v.size()));
}

double law_variance(const MixingLaw& law) {
  if (std::holds_alternative<Gig>(law)) {
    const Gig& g = std::get<Gig>(law);
    const double m1 = testing::gig_mean_quadrature(g.lambda(), g.a(), g.b(), 1e-10);
    const double m2 = testing::gig_moment2_quadrature(g.lambda(), g.a(), g.b(), 1e-10);
    return m2 - m1 * m1;
  }
  const ThorinPair gen = as_thorin(law);
  double v = 0.0;
  for (const auto& a : gen.atoms()) v += a.weight / (a.location * a.location);
  return v;
}

}  // namespace

TEST_CASE("identical seeds reproduce batches bit for bit") {
  const MixingLaw law = Gig(1.0, 1.0, 2.0);
  const SampleBatch a = sample_mixing(law, 512, 99);
  const SampleBatch b = sample_mixing(law, 512, 99);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
  const SampleBatch c = sample_mixing(law, 512, 100);
  CHECK(a.values != c.values);
}

TEST_CASE("longer batches extend shorter ones draw for draw") {
  const MixingLaw law = FiniteGammaConvolution(0.5, {{2.0, 3.0}, {1.0, 0.5}});
  const SampleBatch small = sample_mixing(law, 64, 7);
  const SampleBatch large = sample_mixing(law, 256, 7);
  for (std::size_t i = 0; i < small.values.size(); ++i)
    CHECK(small.values[i] == large.values[i]);
}

TEST_CASE("gamma batch mean within four standard errors") {
  const MixingLaw law = FiniteGammaConvolution(0.0, {{2.0, 3.0}});
  const SampleBatch batch = sample_mixing(law, 1000000, 2024);
  const double m = sample_mean(batch.values);
  const double se = std::sqrt(sample_var(batch.values, m) / 1e6);
  CHECK(std::fabs(m - 6.0) <= 4.0 * se);
  CHECK(batch.envelope_acceptance == 1.0);
}

TEST_CASE("atomic batch mean matches the generator mean") {
  const MixingLaw law = AtomicGgc(ThorinPair(1.0, {{2.0, 4.0}}));
  const SampleBatch batch = sample_mixing(law, 1000000, 555);
  const double m = sample_mean(batch.values);
  const double se = std::sqrt(sample_var(batch.values, m) / 1e6);
  CHECK(std::fabs(m - 3.0) <= 4.0 * se);
}

TEST_CASE("twenty random laws match closed-form mean and variance") {
  LawRng rng(31337);
  for (int i = 0; i < 20; ++i) {
    const MixingLaw law = testing::random_gamma_convolution(rng, 3, true);
    const std::size_t n = 1000000;
    const SampleBatch batch = sample_mixing(law, n, 1000 + i);
    const double m = sample_mean(batch.values);
    const double v = sample_var(batch.values, m);
    const double se_mean = std::sqrt(v / static_cast<double>(n));
    CHECK(std::fabs(m - mean(law)) <= 4.0 * se_mean);
    const double se_var = variance_stderr(batch.values, m, v);
    CHECK(std::fabs(v - law_variance(law)) <= 6.0 * se_var);
  }
}

TEST_CASE("atomic law and its gamma-convolution image sample the same distribution") {
  LawRng rng(404);
  const MixingLaw conv = testing::random_gamma_convolution(rng, 3);
  const MixingLaw atomic = AtomicGgc(as_thorin(conv));
  const std::size_t n = 100000;
  const SampleBatch a = sample_mixing(atomic, n, 1);
  const SampleBatch b = sample_mixing(conv, n, 2);
  const double d = testing::ks_two_sample(a.values, b.values);
  const double critical = 1.628 * std::sqrt(2.0 / static_cast<double>(n));  // 1% level
  CHECK(d <= critical);
}

TEST_CASE("gig sampler matches the quadrature cdf") {
  const double lambda = 1.0, a = 1.0, b = 2.0;
  const MixingLaw law = Gig(lambda, a, b);
  const std::size_t n = 1000000;
  const SampleBatch batch = sample_mixing(law, n, 77);
  CHECK(batch.envelope_acceptance >= 0.1);
  CHECK(batch.envelope_acceptance <= 1.0);

  // cumulative Simpson over the unnormalized density
  const int grid_n = 4001;
  const double hi = 12.0;  // far tail for these parameters
  std::vector<double> xs(grid_n), cdf(grid_n);
  for (int i = 0; i < grid_n; ++i) xs[i] = hi * i / (grid_n - 1);
  cdf[0] = 0.0;
  for (int i = 1; i < grid_n; ++i) {
    const double lo = xs[i - 1], mid = 0.5 * (xs[i - 1] + xs[i]);
    cdf[i] = cdf[i - 1] + (xs[i] - lo) / 6.0 *
                              (testing::gig_unnormalized(lo, lambda, a, b) +
                               4.0 * testing::gig_unnormalized(mid, lambda, a, b) +
                               testing::gig_unnormalized(xs[i], lambda, a, b));
  }
  const double total = cdf.back() + testing::integrate_upper(
                                        [&](double x) {
                                          return testing::gig_unnormalized(x, lambda, a, b);
                                        },
                                        hi, 1e-10);
  const auto cdf_at = [&](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= hi) return 1.0;
    const double u = x / hi * (grid_n - 1);
    const int j = std::min(static_cast<int>(u), grid_n - 2);
    const double frac = u - j;
    return (cdf[j] * (1.0 - frac) + cdf[j + 1] * frac) / total;
  };
  const double d = testing::ks_vs_cdf(batch.values, cdf_at);
  CHECK(d <= 1.95 / std::sqrt(static_cast<double>(n)) * 1.5);
}

TEST_CASE("nmvm moments in one dimension") {
  NmvmModel symmetric{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1),
                      Eigen::MatrixXd::Identity(1, 1),
                      FiniteGammaConvolution(0.0, {{1.0, 1.0}})};
  const auto draws = sample_nmvm(symmetric, 1000000, 5);
  double m = 0.0;
  for (const auto& x : draws) m += x(0);
  m /= 1e6;
  double v = 0.0;
  for (const auto& x : draws) v += (x(0) - m) * (x(0) - m);
  v /= 1e6 - 1;
  CHECK(std::fabs(m) <= 4.0 * std::sqrt(v / 1e6));

  NmvmModel skewed{Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 2.0),
                   Eigen::MatrixXd::Identity(1, 1),
                   FiniteGammaConvolution(0.0, {{2.0, 3.0}})};
  const auto draws2 = sample_nmvm(skewed, 1000000, 6);
  double m2 = 0.0;
  for (const auto& x : draws2) m2 += x(0);
  m2 /= 1e6;
  double v2 = 0.0;
  for (const auto& x : draws2) v2 += (x(0) - m2) * (x(0) - m2);
  v2 /= 1e6 - 1;
  CHECK(std::fabs(m2 - 13.0) <= 4.0 * std::sqrt(v2 / 1e6));
}

TEST_CASE("nmvm covariance matches the mixture identity componentwise") {
  NmvmModel model;
  model.mu = Eigen::VectorXd::Zero(2);
  model.gamma_vec = Eigen::VectorXd(2);
  model.gamma_vec << 0.4, -0.2;
  model.a_matrix = Eigen::MatrixXd(2, 2);
  model.a_matrix << 0.8, 0.2, 0.2, 0.6;
  model.law = Gig(0.5, 1.0, 1.5);

  const std::size_t n = 400000;
  const auto draws = sample_nmvm(model, n, 99);
  Eigen::VectorXd mean_vec = Eigen::VectorXd::Zero(2);
  for (const auto& x : draws) mean_vec += x;
  mean_vec /= static_cast<double>(n);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
  for (const auto& x : draws) cov += (x - mean_vec) * (x - mean_vec).transpose();
  cov /= static_cast<double>(n - 1);

  const Gig& g = std::get<Gig>(model.law);
  const double ez = testing::gig_mean_quadrature(g.lambda(), g.a(), g.b(), 1e-10);
  const double ez2 = testing::gig_moment2_quadrature(g.lambda(), g.a(), g.b(), 1e-10);
  const double var_z = ez2 - ez * ez;
  const Eigen::MatrixXd sigma = model.a_matrix * model.a_matrix.transpose();
  const Eigen::MatrixXd expected =
      ez * sigma + var_z * model.gamma_vec * model.gamma_vec.transpose();

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // moment-based standard error of a covariance entry
      double m22 = 0.0;
      for (const auto& x : draws) {
        const double d = (x(i) - mean_vec(i)) * (x(j) - mean_vec(j));
        m22 += (d - cov(i, j)) * (d - cov(i, j));
      }
      m22 /= static_cast<double>(n);
      const double se = std::sqrt(m22 / static_cast<double>(n));
      CHECK(std::fabs(cov(i, j) - expected(i, j)) <= 5.0 * se);
    }
  }
}

TEST_CASE("sample_nmvm validates its matrix") {
  NmvmModel model;
  model.mu = Eigen::VectorXd::Zero(2);
  model.gamma_vec = Eigen::VectorXd::Zero(2);
  model.a_matrix = Eigen::MatrixXd(2, 2);
  model.a_matrix << 1.0, 0.9, -0.9, 1.0;  // not symmetric
  model.law = FiniteGammaConvolution(0.0, {{1.0, 1.0}});
  CHECK_THROWS_AS(sample_nmvm(model, 1000, 1), std::invalid_argument);
}

TEST_CASE("riskless portfolio has deterministic utility") {
  NmvmModel model{Eigen::VectorXd::Constant(1, 0.1), Eigen::VectorXd::Constant(1, 0.2),
                  Eigen::MatrixXd::Identity(1, 1), FiniteGammaConvolution(0.0, {{1.0, 1.0}})};
  const MarketSpec market{0.02, 1.5, 2.0};
  const MonteCarloEstimate est =
      mc_expected_utility(model, market, Eigen::VectorXd::Zero(1), 10000, 3);
  CHECK(est.estimate == doctest::Approx(-std::exp(-1.5 * 2.0 * 1.02)).epsilon(1e-13));
  CHECK(est.stderr_ <= 1e-12);
}

TEST_CASE("mc utility is deterministic per seed") {
  NmvmModel model{Eigen::VectorXd::Constant(1, 0.1), Eigen::VectorXd::Constant(1, 0.2),
                  Eigen::MatrixXd::Identity(1, 1), FiniteGammaConvolution(0.0, {{2.0, 0.5}})};
  const MarketSpec market{0.02, 1.0, 1.0};
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.3);
  const MonteCarloEstimate a = mc_expected_utility(model, market, x, 20000, 11);
  const MonteCarloEstimate b = mc_expected_utility(model, market, x, 20000, 11);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK_THROWS_AS(mc_expected_utility(model, market, x, 10, 1), std::invalid_argument);
}

TEST_CASE("sample batch export carries its descriptor") {
  const SampleBatch batch = sample_mixing(FiniteGammaConvolution(0.0, {{2.0, 3.0}}), 4, 9);
  const std::string text = format_sample_batch(batch);
  CHECK(text.rfind("# law: finite_gamma_convolution tau=0 components=[[2, 3]]", 0) == 0);
  CHECK(text.find("# seed: 9") != std::string::npos);
  // header plus one line per value
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}
