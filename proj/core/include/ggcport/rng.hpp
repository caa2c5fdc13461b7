#pragma once

#include <cstdint>

namespace ggcport {

/// Counter-seeded xoshiro256** stream. A (seed, stream) pair fully determines
/// the sequence, so per-draw substreams reproduce bit-identically under any
/// execution order.
class SplitStream {
 public:
  SplitStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform on (0, 1).
  double next_unit();

  /// Standard normal (Box-Muller; pairs are cached).
  double next_normal();

  /// Gamma variate with the given shape and scale (Marsaglia-Tsang).
  double next_gamma(double shape, double scale);

  /// Exponential with the given rate.
  double next_exponential(double rate);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stream-id namespace tags; keeps independently drawn quantities on
/// non-overlapping substreams of one seed.
enum class StreamTag : std::uint64_t {
  mixing = 1,
  gig = 2,
  normals = 3,
};

std::uint64_t stream_id(StreamTag tag, std::uint64_t draw, std::uint64_t slot = 0);

}  // namespace ggcport
