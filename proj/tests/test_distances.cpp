#include <doctest.h>

#include <cmath>

#include "ggcport/distances.hpp"
#include "support/oracles.hpp"

using namespace ggcport;
using ggcport::testing::LawRng;

namespace {

MixingLaw gamma_law(double shape, double scale, double tau = 0.0) {
  return FiniteGammaConvolution(tau, {{shape, scale}});
}

}  // namespace

TEST_CASE("identical laws are at distance zero") {
  const MixingLaw law = gamma_law(2.0, 1.5);
  const DistanceReport r = distance_report(law, law);
  CHECK(r.kolmogorov == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.total_variation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.fm_lower == doctest::Approx(0.0));
  CHECK(r.fm_upper <= 1e-8);
}

TEST_CASE("a large drift separates the supports almost completely") {
  const MixingLaw a = gamma_law(1.0, 1.0);
  const MixingLaw b = gamma_law(1.0, 1.0, 10.0);
  CHECK(kolmogorov(a, b) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(total_variation(a, b) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("total variation between two exponentials has a closed form") {
  // Crossing point of the densities at 2 ln 2 gives d_TV = 1/4 exactly.
  const double tv = total_variation(gamma_law(1.0, 1.0), gamma_law(1.0, 2.0));
  CHECK(tv == doctest::Approx(0.25).epsilon(2e-4));
}

TEST_CASE("kolmogorov never exceeds total variation") {
  LawRng rng(606);
  for (int i = 0; i < 15; ++i) {
    const MixingLaw a = testing::random_law(rng);
    const MixingLaw b = testing::random_law(rng);
    const DistanceReport r = distance_report(a, b);
    CHECK(r.kolmogorov <= r.total_variation + r.kolmogorov_error + r.total_variation_error);
    CHECK(r.kolmogorov >= 0.0);
    CHECK(r.total_variation <= 1.0 + 1e-9);
    CHECK(r.fm_lower <= r.fm_upper);
    CHECK(r.fm_upper <= 2.0);
  }
}

TEST_CASE("distances are symmetric") {
  LawRng rng(607);
  for (int i = 0; i < 8; ++i) {
    const MixingLaw a = testing::random_law(rng);
    const MixingLaw b = testing::random_law(rng);
    const DistanceReport ab = distance_report(a, b);
    const DistanceReport ba = distance_report(b, a);
    CHECK(ab.kolmogorov == doctest::Approx(ba.kolmogorov).epsilon(1e-10));
    CHECK(ab.total_variation == doctest::Approx(ba.total_variation).epsilon(1e-10));
    CHECK(ab.fm_lower == doctest::Approx(ba.fm_lower).epsilon(1e-10));
    CHECK(ab.fm_upper == doctest::Approx(ba.fm_upper).epsilon(1e-10));
  }
}

TEST_CASE("triangle inequality on random triples") {
  LawRng rng(608);
  for (int i = 0; i < 6; ++i) {
    const MixingLaw a = testing::random_law(rng);
    const MixingLaw b = testing::random_law(rng);
    const MixingLaw c = testing::random_law(rng);
    const DistanceReport ab = distance_report(a, b);
    const DistanceReport bc = distance_report(b, c);
    const DistanceReport ac = distance_report(a, c);
    const double slack_kol =
        2.0 * (ab.kolmogorov_error + bc.kolmogorov_error + ac.kolmogorov_error);
    CHECK(ac.kolmogorov <= ab.kolmogorov + bc.kolmogorov + slack_kol);
    const double slack_tv = 2.0 * (ab.total_variation_error + bc.total_variation_error +
                                   ac.total_variation_error);
    CHECK(ac.total_variation <= ab.total_variation + bc.total_variation + slack_tv);
  }
}

TEST_CASE("fortet-mourier bracket is genuinely a bracket on a near pair") {
  const auto [lo, hi] = fortet_mourier_bracket(gamma_law(1.0, 1.0), gamma_law(1.0, 1.05));
  CHECK(lo >= 0.0);
  CHECK(lo <= hi);
  CHECK(hi < 0.2);
}

TEST_CASE("all three distances shrink along a weakly convergent family") {
  const MixingLaw target = gamma_law(2.0, 1.0);
  double prev_tv = 1e9, prev_kol = 1e9, prev_fm = 1e9;
  for (int n = 1; n <= 4; ++n) {
    const double scale = 1.0 + std::pow(0.5, n);
    const DistanceReport r = distance_report(gamma_law(2.0, scale), target);
    CHECK(r.total_variation < prev_tv);
    CHECK(r.kolmogorov < prev_kol);
    CHECK(r.fm_upper < prev_fm + 1e-9);
    prev_tv = r.total_variation;
    prev_kol = r.kolmogorov;
    prev_fm = r.fm_upper;
  }
  CHECK(prev_tv < 0.05);
  CHECK(prev_fm < 0.1);
}

TEST_CASE("reported error bounds are small on the default grid") {
  const DistanceReport r = distance_report(gamma_law(2.0, 1.0), gamma_law(2.0, 1.1));
  CHECK(r.kolmogorov_error <= 1e-4);
  CHECK(r.total_variation_error <= 1e-4);
}
