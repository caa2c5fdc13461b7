#include "ggcport/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ggcport/rng.hpp"

namespace ggcport {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SplitStream::SplitStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (stream * 0x9E3779B97F4A7C15ULL);
  for (auto& s : s_) s = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t SplitStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SplitStream::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitStream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(next_unit()));
  const double theta = kTwoPi * next_unit();
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double SplitStream::next_gamma(double shape, double scale) {
  if (shape < 1.0) {
    const double boost_draw = next_gamma(shape + 1.0, 1.0);
    return boost_draw * std::pow(next_unit(), 1.0 / shape) * scale;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_unit();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

double SplitStream::next_exponential(double rate) { return -std::log(next_unit()) / rate; }

std::uint64_t stream_id(StreamTag tag, std::uint64_t draw, std::uint64_t slot) {
  return (static_cast<std::uint64_t>(tag) << 48) | (draw << 16) | (slot & 0xFFFF);
}

namespace {

// Rejection sampler for the GIG law, built on the log-concavity of the
// density of Y = ln X. Envelope: a plateau between the two points where the
// log density has dropped by 1 from its mode, with exponential tails whose
// rates are the tangent slopes there. Mixture acceptance is >= 0.46 by the
// usual chord/tangent bounds, comfortably above the 0.1 floor.
class GigSampler {
 public:
  explicit GigSampler(const Gig& law)
      : lambda_(law.lambda()), a2_(law.a() * law.a()), b2_(law.b() * law.b()) {
    const double ab = law.a() * law.b();
    const double t = (lambda_ + std::sqrt(lambda_ * lambda_ + ab * ab)) / b2_;
    y_mode_ = std::log(t);
    peak_ = log_density(y_mode_);
    y_lo_ = drop_point(-1.0);
    y_hi_ = drop_point(+1.0);
    slope_lo_ = derivative(y_lo_);
    slope_hi_ = -derivative(y_hi_);
    area_mid_ = y_hi_ - y_lo_;
    area_lo_ = std::exp(-1.0) / slope_lo_;
    area_hi_ = std::exp(-1.0) / slope_hi_;
    total_ = area_mid_ + area_lo_ + area_hi_;
  }

  double draw(SplitStream& rng, std::uint64_t& trials, std::uint64_t& accepts) const {
    for (;;) {
      ++trials;
      const double pick = rng.next_unit() * total_;
      double y, log_envelope;
      if (pick < area_mid_) {
        y = y_lo_ + rng.next_unit() * area_mid_;
        log_envelope = 0.0;
      } else if (pick < area_mid_ + area_hi_) {
        const double e = rng.next_exponential(slope_hi_);
        y = y_hi_ + e;
        log_envelope = -1.0 - slope_hi_ * e;
      } else {
        const double e = rng.next_exponential(slope_lo_);
        y = y_lo_ - e;
        log_envelope = -1.0 - slope_lo_ * e;
      }
      if (std::log(rng.next_unit()) <= log_density(y) - peak_ - log_envelope) {
        ++accepts;
        return std::exp(y);
      }
    }
  }

 private:
  double log_density(double y) const {
    return lambda_ * y - 0.5 * (a2_ * std::exp(-y) + b2_ * std::exp(y));
  }
  double derivative(double y) const {
    return lambda_ + 0.5 * (a2_ * std::exp(-y) - b2_ * std::exp(y));
  }
  // Point on the requested side of the mode where the log density is
  // peak - 1; found by doubling then bisection.
  double drop_point(double direction) const {
    double step = 1.0;
    double inner = y_mode_;
    double outer = y_mode_ + direction * step;
    while (log_density(outer) > peak_ - 1.0) {
      step *= 2.0;
      outer = y_mode_ + direction * step;
    }
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (inner + outer);
      if (log_density(mid) > peak_ - 1.0)
        inner = mid;
      else
        outer = mid;
    }
    return 0.5 * (inner + outer);
  }

  double lambda_, a2_, b2_;
  double y_mode_, peak_;
  double y_lo_, y_hi_, slope_lo_, slope_hi_;
  double area_mid_, area_lo_, area_hi_, total_;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SampleBatch sample_mixing(const MixingLaw& law, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_mixing: n must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.law_descriptor = law_descriptor(law);
  batch.values.resize(n);

  if (std::holds_alternative<Gig>(law)) {
    const GigSampler sampler(std::get<Gig>(law));
    std::uint64_t trials = 0, accepts = 0;
    for (std::size_t k = 0; k < n; ++k) {
      SplitStream rng(seed, stream_id(StreamTag::gig, k));
      batch.values[k] = sampler.draw(rng, trials, accepts);
    }
    batch.envelope_acceptance =
        trials > 0 ? static_cast<double>(accepts) / static_cast<double>(trials) : 1.0;
    if (batch.envelope_acceptance < 0.1)
      throw std::runtime_error("sample_mixing: GIG envelope acceptance below floor");
    return batch;
  }

  // Explicitly generated laws are exact finite sums of gamma variates.
  const FiniteGammaConvolution conv =
      std::holds_alternative<AtomicGgc>(law)
          ? to_gamma_convolution(std::get<AtomicGgc>(law).generator())
          : std::get<FiniteGammaConvolution>(law);
  const auto& comps = conv.components();
  for (std::size_t k = 0; k < n; ++k) {
    double z = conv.tau();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      SplitStream rng(seed, stream_id(StreamTag::mixing, k, i));
      z += rng.next_gamma(comps[i].shape, comps[i].scale);
    }
    batch.values[k] = z;
  }
  return batch;
}

std::vector<Eigen::VectorXd> sample_nmvm(const NmvmModel& model, std::size_t n,
                                         std::uint64_t seed) {
  const Eigen::Index d = model.dimension();
  if (model.gamma_vec.size() != d || model.a_matrix.rows() != d || model.a_matrix.cols() != d)
    throw std::invalid_argument("sample_nmvm: inconsistent model dimensions");
  if (!model.a_matrix.isApprox(model.a_matrix.transpose(), 1e-12))
    throw std::invalid_argument("sample_nmvm: A must be symmetric");
  const Eigen::MatrixXd sigma = model.a_matrix * model.a_matrix.transpose();
  if (Eigen::LLT<Eigen::MatrixXd>(sigma).info() != Eigen::Success)
    throw std::invalid_argument("sample_nmvm: A must be positive definite");

  const SampleBatch z = sample_mixing(model.law, n, seed);
  std::vector<Eigen::VectorXd> out(n);
  Eigen::VectorXd normal(d);
  for (std::size_t k = 0; k < n; ++k) {
    SplitStream rng(seed, stream_id(StreamTag::normals, k));
    for (Eigen::Index i = 0; i < d; ++i) normal(i) = rng.next_normal();
    out[k] = model.mu + model.gamma_vec * z.values[k] +
             std::sqrt(z.values[k]) * (model.a_matrix * normal);
  }
  return out;
}

MonteCarloEstimate mc_expected_utility(const NmvmModel& model, const MarketSpec& market,
                                       const Eigen::VectorXd& x, std::size_t n,
                                       std::uint64_t seed) {
  if (n < 1000) throw std::invalid_argument("mc_expected_utility: n must be >= 1000");
  if (x.size() != model.dimension())
    throw std::invalid_argument("mc_expected_utility: portfolio dimension mismatch");

  const double w0 = market.initial_wealth;
  const double a = market.risk_aversion;
  const double base = w0 * (1.0 + market.r_f);
  const Eigen::VectorXd excess = model.mu.array() - market.r_f;
  const double drift = w0 * x.dot(excess);
  const double skew = w0 * x.dot(model.gamma_vec);
  const Eigen::VectorXd diffusion = w0 * (model.a_matrix.transpose() * x);

  const SampleBatch z = sample_mixing(model.law, n, seed);
  const Eigen::Index d = model.dimension();

  double mean_acc = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    SplitStream rng(seed, stream_id(StreamTag::normals, k));
    double shock = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) shock += diffusion(i) * rng.next_normal();
    const double wealth = base + drift + skew * z.values[k] + std::sqrt(z.values[k]) * shock;
    const double utility = -std::exp(-a * wealth);
    const double delta = utility - mean_acc;
    mean_acc += delta / static_cast<double>(k + 1);
    m2 += delta * (utility - mean_acc);
  }
  MonteCarloEstimate est;
  const double nn = static_cast<double>(n);
  est.estimate = mean_acc;
  est.stderr_ = std::sqrt(std::max(0.0, m2 / (nn - 1.0)) / nn);
  return est;
}

std::string format_sample_batch(const SampleBatch& batch) {
  std::string out = "# law: " + batch.law_descriptor + "\n";
  out += "# seed: " + std::to_string(batch.seed) + "\n";
  out += "# envelope_acceptance: " + format_number(batch.envelope_acceptance) + "\n";
  for (double v : batch.values) {
    out += format_number(v);
    out += '\n';
  }
  return out;
}

}  // namespace ggcport
