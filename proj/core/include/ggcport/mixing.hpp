#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ggcport/extended_real.hpp"

namespace ggcport {

/// Raised by operations that need an explicit Thorin generator on a law that
/// does not carry one (the GIG family).
class unsupported_law_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GammaComponent {
  double shape;  ///< alpha > 0
  double scale;  ///< beta > 0; the component mean is shape * scale
};

struct ThorinAtom {
  double location;  ///< t > 0
  double weight;    ///< w > 0
};

/// Generator (tau, nu) of a GGC law, with nu a finite list of atoms.
/// Canonical form: locations strictly increasing, duplicates merged.
class ThorinPair {
 public:
  ThorinPair(double tau, std::vector<ThorinAtom> atoms);

  double tau() const { return tau_; }
  const std::vector<ThorinAtom>& atoms() const { return atoms_; }
  double total_weight() const;

 private:
  double tau_;
  std::vector<ThorinAtom> atoms_;
};

/// Law of tau + sum of independent Gamma(shape_i, scale_i) variables.
/// Canonical form: scales strictly increasing, equal scales merged by adding
/// shapes (so an all-equal-scale convolution collapses to a single gamma).
class FiniteGammaConvolution {
 public:
  FiniteGammaConvolution(double tau, std::vector<GammaComponent> components);

  double tau() const { return tau_; }
  const std::vector<GammaComponent>& components() const { return components_; }

 private:
  double tau_;
  std::vector<GammaComponent> components_;
};

/// Generalized inverse Gaussian law with density proportional to
/// x^{lambda-1} exp(-(a^2/x + b^2 x)/2) on (0, inf).
class Gig {
 public:
  Gig(double lambda, double a, double b);

  double lambda() const { return lambda_; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double lambda_;
  double a_;
  double b_;
};

/// GGC specified directly by its generator.
class AtomicGgc {
 public:
  explicit AtomicGgc(ThorinPair generator);

  const ThorinPair& generator() const { return generator_; }

 private:
  ThorinPair generator_;
};

using MixingLaw = std::variant<FiniteGammaConvolution, Gig, AtomicGgc>;

/// E exp(-sZ). Divergent (signalled +inf) for s at or below the
/// integrability number when the transform genuinely diverges there.
ExtendedReal laplace(const MixingLaw& law, double s);

/// ln of laplace(); identical divergence behaviour, no overflow for finite
/// transforms.
ExtendedReal log_laplace(const MixingLaw& law, double s);

/// EZ. Finite for every supported law.
double mean(const MixingLaw& law);

/// s_hat = inf{s : E exp(-sZ) < inf}, always <= 0 here.
double integrability_number(const MixingLaw& law);

/// Partial mean of the Thorin measure: sum of w_i / t_i over atoms with
/// t_i <= delta. Requires an explicit generator.
double thorin_partial_mean(const MixingLaw& law, double delta);

/// The deterministic integrand h(s) = 1 / F_nu^{-1}(s) of the Wiener-Gamma
/// representation, with F_nu the right-continuous cumulative weight of the
/// atoms. Non-increasing step function of s > 0; zero beyond the total weight.
double wiener_gamma_h(const ThorinPair& generator, double s);

/// Exact generator of an explicitly generated law: atoms (1/beta_i, alpha_i),
/// drift preserved. Throws unsupported_law_error for Gig.
ThorinPair as_thorin(const MixingLaw& law);

/// Inverse of as_thorin: components (weight_i, 1/location_i).
FiniteGammaConvolution to_gamma_convolution(const ThorinPair& generator);

/// Pointwise upper bound for the density of a gamma convolution with at least
/// two distinct scales and zero drift.
double moschopoulos_bound(const FiniteGammaConvolution& conv, double x);

/// Stable identifier of the law kind ("finite_gamma_convolution", "gig",
/// "atomic_ggc"); used by serialization and diagnostics.
std::string law_kind(const MixingLaw& law);

/// One-line description of a law (kind plus parameters), used in sample
/// batch headers and error messages.
std::string law_descriptor(const MixingLaw& law);

}  // namespace ggcport
