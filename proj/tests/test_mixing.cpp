#include <doctest.h>

#include <cmath>

#include "ggcport/mixing.hpp"
#include "support/oracles.hpp"

using namespace ggcport;
using ggcport::testing::LawRng;

namespace {

MixingLaw gamma_law(double shape, double scale, double tau = 0.0) {
  return FiniteGammaConvolution(tau, {{shape, scale}});
}

}  // namespace

TEST_CASE("laplace of a gamma law is the closed product form") {
  const MixingLaw law = gamma_law(2.0, 3.0);
  CHECK(laplace(law, 1.0).value() == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("laplace at zero is one for every law") {
  LawRng rng(101);
  for (int i = 0; i < 200; ++i) {
    const MixingLaw law = testing::random_law(rng);
    const ExtendedReal l0 = laplace(law, 0.0);
    REQUIRE(l0.finite());
    CHECK(l0.value() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gig laplace agrees with density quadrature") {
  const double value = laplace(Gig(1.0, 1.0, 2.0), 0.5).value();
  const double oracle = testing::gig_laplace_quadrature(1.0, 1.0, 2.0, 0.5, 1e-10);
  CHECK(value == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("laplace is decreasing and log-convex above the abscissa") {
  LawRng rng(345);
  for (int i = 0; i < 200; ++i) {
    const MixingLaw law = testing::random_law(rng);
    const double s_hat = integrability_number(law);
    const double lo = 0.9 * s_hat;  // strictly inside (s_hat, inf)
    const double hi = 3.0;
    const int n = 24;
    double prev_log = 0.0, prev_prev_log = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double s = lo + (hi - lo) * k / n;
      const ExtendedReal l = log_laplace(law, s);
      REQUIRE(l.finite());
      const double cur = l.value();
      if (k >= 1) CHECK(cur < prev_log);  // strictly decreasing
      if (k >= 2) CHECK(prev_prev_log - 2.0 * prev_log + cur > -1e-10);  // convex
      prev_prev_log = prev_log;
      prev_log = cur;
    }
  }
}

TEST_CASE("mean closed forms") {
  CHECK(mean(gamma_law(2.0, 3.0)) == doctest::Approx(6.0).epsilon(1e-15));
  const MixingLaw atomic = AtomicGgc(ThorinPair(1.5, {{2.0, 4.0}}));
  CHECK(mean(atomic) == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("gig mean agrees with density quadrature") {
  const double value = mean(Gig(1.0, 1.0, 2.0));
  const double oracle = testing::gig_mean_quadrature(1.0, 1.0, 2.0, 1e-10);
  CHECK(value == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("mean matches the central difference of the transform at zero") {
  LawRng rng(999);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const MixingLaw law = testing::random_law(rng);
    const double numeric = -(laplace(law, h).value() - laplace(law, -h).value()) / (2.0 * h);
    CHECK(numeric == doctest::Approx(mean(law)).epsilon(1e-4));
  }
}

TEST_CASE("integrability numbers") {
  const MixingLaw conv = FiniteGammaConvolution(0.0, {{1.0, 2.0}, {1.0, 5.0}});
  CHECK(integrability_number(conv) == doctest::Approx(-0.2).epsilon(1e-15));
  const MixingLaw atomic = AtomicGgc(ThorinPair(0.0, {{0.2, 1.0}}));
  CHECK(integrability_number(atomic) == doctest::Approx(-0.2).epsilon(1e-15));
  // bisection on the divergence of the defining integral confirms -b^2/2
  const double oracle = testing::gig_in_bisection(-0.5, 1.0, 2.0);
  CHECK(integrability_number(Gig(-0.5, 1.0, 2.0)) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("transform diverges approaching the abscissa") {
  LawRng rng(31);
  int checked = 0;
  while (checked < 30) {
    MixingLaw law = testing::random_law(rng);
    if (std::holds_alternative<Gig>(law)) {
      const Gig& g = std::get<Gig>(law);
      if (g.lambda() < 0.2) continue;  // see the finite-at-abscissa case below
    } else {
      const ThorinPair gen = as_thorin(law);
      if (gen.atoms().front().weight < 0.2) continue;  // divergence too slow to surface
    }
    ++checked;
    const double s_hat = integrability_number(law);
    REQUIRE(s_hat < 0.0);
    double eps = std::fabs(s_hat) / 1e3;
    bool exceeded = false;
    for (int k = 0; k < 900 && !exceeded; ++k) {
      const ExtendedReal l = laplace(law, s_hat + eps);
      exceeded = !l.finite() || l.value() >= 1e6;
      eps *= 0.5;
    }
    CHECK(exceeded);
  }
}

TEST_CASE("gig transform with negative order stays finite at the abscissa") {
  // With lambda < 0 the right tail is light enough that the transform
  // converges at the abscissa itself; the closed form reproduces the
  // quadrature limit.
  const Gig law(-1.5, 1.0, 2.0);
  const double s_hat = integrability_number(MixingLaw(law));
  const ExtendedReal at = laplace(MixingLaw(law), s_hat);
  REQUIRE(at.finite());
  const double oracle = testing::gig_laplace_quadrature(-1.5, 1.0, 2.0, s_hat, 1e-10);
  CHECK(at.value() == doctest::Approx(oracle).epsilon(1e-7));
  // below the abscissa it is divergent
  CHECK(laplace(MixingLaw(law), s_hat - 1e-9).divergent());
}

TEST_CASE("thorin partial means") {
  const MixingLaw atomic = AtomicGgc(ThorinPair(0.0, {{2.0, 4.0}}));
  CHECK(thorin_partial_mean(atomic, 1.0) == doctest::Approx(0.0));
  CHECK(thorin_partial_mean(atomic, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  const MixingLaw conv = FiniteGammaConvolution(0.0, {{1.0, 2.0}, {3.0, 10.0}});
  CHECK(thorin_partial_mean(conv, 0.2) == doctest::Approx(30.0).epsilon(1e-13));
  CHECK_THROWS_AS(thorin_partial_mean(Gig(1.0, 1.0, 1.0), 0.5), unsupported_law_error);
}

TEST_CASE("wiener-gamma integrand steps through the atom locations") {
  const ThorinPair single(0.0, {{2.0, 4.0}});
  CHECK(wiener_gamma_h(single, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  const ThorinPair two(0.0, {{1.0, 1.0}, {5.0, 2.0}});
  CHECK(wiener_gamma_h(two, 2.5) == doctest::Approx(0.2).epsilon(1e-15));
  const ThorinPair small(0.0, {{1.0, 1.0}});
  CHECK(wiener_gamma_h(small, 1.5) == 0.0);
}

TEST_CASE("wiener-gamma integrand is non-increasing and positive up to the total weight") {
  LawRng rng(77);
  for (int i = 0; i < 30; ++i) {
    const ThorinPair gen = as_thorin(testing::random_gamma_convolution(rng, 4));
    const double total = gen.total_weight();
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 64; ++k) {
      const double s = total * k / 65.0;
      const double h = wiener_gamma_h(gen, s);
      CHECK(h > 0.0);
      CHECK(h <= prev);
      prev = h;
    }
    CHECK(wiener_gamma_h(gen, total * 1.01) == 0.0);
  }
}

TEST_CASE("as_thorin bijection") {
  const ThorinPair atoms = as_thorin(gamma_law(2.0, 4.0));
  REQUIRE(atoms.atoms().size() == 1);
  CHECK(atoms.atoms()[0].location == doctest::Approx(0.25).epsilon(1e-16));
  CHECK(atoms.atoms()[0].weight == doctest::Approx(2.0).epsilon(1e-16));

  const ThorinPair merged = as_thorin(FiniteGammaConvolution(0.0, {{1.0, 2.0}, {3.0, 2.0}}));
  REQUIRE(merged.atoms().size() == 1);
  CHECK(merged.atoms()[0].location == doctest::Approx(0.5).epsilon(1e-16));
  CHECK(merged.atoms()[0].weight == doctest::Approx(4.0).epsilon(1e-16));

  const ThorinPair gen(1.0, {{0.5, 1.0}, {2.0, 3.0}});
  const ThorinPair round = as_thorin(MixingLaw(AtomicGgc(gen)));
  REQUIRE(round.atoms().size() == gen.atoms().size());
  CHECK(round.tau() == gen.tau());
  for (std::size_t i = 0; i < gen.atoms().size(); ++i) {
    CHECK(round.atoms()[i].location == gen.atoms()[i].location);
    CHECK(round.atoms()[i].weight == gen.atoms()[i].weight);
  }
}

TEST_CASE("round trip through the generator is exact on power-of-two scales") {
  // reciprocals of powers of two are themselves exact, so the bijection is
  // an identity here; general scales round-trip within one ulp (below)
  LawRng rng(55);
  for (int i = 0; i < 50; ++i) {
    std::vector<GammaComponent> comps;
    const std::size_t k = 1 + rng.next() % 4;
    for (std::size_t c = 0; c < k; ++c)
      comps.push_back({rng.uniform(0.2, 5.0), std::ldexp(1.0, (int)(rng.next() % 9) - 4)});
    const FiniteGammaConvolution law(0.0, comps);
    const FiniteGammaConvolution round = to_gamma_convolution(as_thorin(MixingLaw(law)));
    REQUIRE(round.components().size() == law.components().size());
    for (std::size_t c = 0; c < law.components().size(); ++c) {
      CHECK(round.components()[c].shape == law.components()[c].shape);
      CHECK(round.components()[c].scale == law.components()[c].scale);
    }
  }
}

TEST_CASE("round trip through the generator is within one ulp in general") {
  LawRng rng(56);
  for (int i = 0; i < 50; ++i) {
    const MixingLaw law = testing::random_gamma_convolution(rng, 4);
    const auto& components = std::get<FiniteGammaConvolution>(law).components();
    const FiniteGammaConvolution round = to_gamma_convolution(as_thorin(law));
    REQUIRE(round.components().size() == components.size());
    for (std::size_t c = 0; c < components.size(); ++c) {
      CHECK(round.components()[c].shape == components[c].shape);
      const double s0 = components[c].scale;
      const double s1 = round.components()[c].scale;
      CHECK(std::fabs(s1 - s0) <=
            std::nextafter(s0, std::numeric_limits<double>::infinity()) - s0);
    }
  }
}

TEST_CASE("smallest atom location equals the negated integrability number") {
  LawRng rng(4242);
  for (int i = 0; i < 50; ++i) {
    const MixingLaw law = testing::random_gamma_convolution(rng, 4, true);
    const ThorinPair gen = as_thorin(law);
    CHECK(gen.atoms().front().location == -integrability_number(law));
  }
}

TEST_CASE("equal scales collapse to a single component") {
  const FiniteGammaConvolution law(0.0, {{1.0, 1.0}, {1.0, 1.0}});
  REQUIRE(law.components().size() == 1);
  CHECK(law.components()[0].shape == doctest::Approx(2.0));
  CHECK(law.components()[0].scale == doctest::Approx(1.0));
}

TEST_CASE("degenerate inputs are rejected at construction") {
  CHECK_THROWS_AS(FiniteGammaConvolution(0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGammaConvolution(0.0, {{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGammaConvolution(0.0, {{1.0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGammaConvolution(-0.5, {{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ThorinPair(0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(ThorinPair(0.0, {{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ThorinPair(0.0, {{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Gig(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Gig(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("moschopoulos bound constants") {
  const FiniteGammaConvolution conv(0.0, {{1.0, 1.0}, {1.0, 2.0}});
  // C = 1/2, rho = 2, v = 1/2: bound(x) = 0.5 x exp(-x/2)
  CHECK(moschopoulos_bound(conv, 1.0) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));
  // x^{rho-1} factor sends the bound to zero near the origin when rho > 1
  CHECK(moschopoulos_bound(conv, 1e-12) < 1e-11);
}

TEST_CASE("moschopoulos bound preconditions") {
  CHECK_THROWS_AS(moschopoulos_bound(FiniteGammaConvolution(0.0, {{1.0, 1.0}, {1.0, 1.0}}), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(moschopoulos_bound(FiniteGammaConvolution(0.5, {{1.0, 1.0}, {1.0, 2.0}}), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(moschopoulos_bound(FiniteGammaConvolution(0.0, {{1.0, 1.0}, {1.0, 2.0}}), 0.0),
                  std::domain_error);
}

TEST_CASE("law descriptors carry the kind") {
  CHECK(law_kind(gamma_law(1.0, 1.0)) == "finite_gamma_convolution");
  CHECK(law_kind(Gig(1.0, 1.0, 1.0)) == "gig");
  CHECK(law_kind(AtomicGgc(ThorinPair(0.0, {{1.0, 1.0}}))) == "atomic_ggc");
  CHECK(law_descriptor(gamma_law(2.0, 3.0)).find("components=[[2, 3]]") != std::string::npos);
}
