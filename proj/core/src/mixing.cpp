#include "ggcport/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ggcport/specfun.hpp"

namespace ggcport {

namespace {

void require_finite_nonneg_tau(double tau) {
  if (!std::isfinite(tau) || tau < 0.0)
    throw std::invalid_argument("drift tau must be finite and >= 0");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ThorinPair::ThorinPair(double tau, std::vector<ThorinAtom> atoms) : tau_(tau) {
  require_finite_nonneg_tau(tau);
  if (atoms.empty()) throw std::invalid_argument("ThorinPair: needs at least one atom");
  for (const auto& a : atoms) {
    if (!std::isfinite(a.location) || a.location <= 0.0)
      throw std::invalid_argument("ThorinPair: atom locations must be finite and > 0");
    if (!std::isfinite(a.weight) || a.weight <= 0.0)
      throw std::invalid_argument("ThorinPair: atom weights must be finite and > 0");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const ThorinAtom& x, const ThorinAtom& y) { return x.location < y.location; });
  atoms_.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().location == a.location) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
}

double ThorinPair::total_weight() const {
  double w = 0.0;
  for (const auto& a : atoms_) w += a.weight;
  return w;
}

FiniteGammaConvolution::FiniteGammaConvolution(double tau, std::vector<GammaComponent> components)
    : tau_(tau) {
  require_finite_nonneg_tau(tau);
  if (components.empty())
    throw std::invalid_argument("FiniteGammaConvolution: needs at least one component");
  for (const auto& c : components) {
    if (!std::isfinite(c.shape) || c.shape <= 0.0)
      throw std::invalid_argument("FiniteGammaConvolution: shapes must be finite and > 0");
    if (!std::isfinite(c.scale) || c.scale <= 0.0)
      throw std::invalid_argument("FiniteGammaConvolution: scales must be finite and > 0");
  }
  std::sort(components.begin(), components.end(),
            [](const GammaComponent& x, const GammaComponent& y) { return x.scale < y.scale; });
  components_.reserve(components.size());
  for (const auto& c : components) {
    if (!components_.empty() && components_.back().scale == c.scale) {
      components_.back().shape += c.shape;
    } else {
      components_.push_back(c);
    }
  }
}

Gig::Gig(double lambda, double a, double b) : lambda_(lambda), a_(a), b_(b) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("Gig: lambda must be finite");
  if (!std::isfinite(a) || a <= 0.0) throw std::invalid_argument("Gig: a must be finite and > 0");
  if (!std::isfinite(b) || b <= 0.0) throw std::invalid_argument("Gig: b must be finite and > 0");
}

AtomicGgc::AtomicGgc(ThorinPair generator) : generator_(std::move(generator)) {}

namespace {

ExtendedReal log_laplace_fgc(const FiniteGammaConvolution& law, double s) {
  double acc = -law.tau() * s;
  for (const auto& c : law.components()) {
    const double u = c.scale * s;
    if (1.0 + u <= 0.0) return ExtendedReal::positive_infinity();
    acc -= c.shape * std::log1p(u);
  }
  return acc;
}

ExtendedReal log_laplace_atoms(const AtomicGgc& law, double s) {
  const auto& gen = law.generator();
  double acc = -gen.tau() * s;
  for (const auto& a : gen.atoms()) {
    const double u = s / a.location;
    if (1.0 + u <= 0.0) return ExtendedReal::positive_infinity();
    acc -= a.weight * std::log1p(u);
  }
  return acc;
}

// exp(-sZ) moment of the GIG law: for b^2 + 2s > 0,
//   L(s) = (b / sqrt(b^2 + 2s))^lambda * K_lambda(a sqrt(b^2 + 2s)) / K_lambda(a b).
// At the abscissa b^2 + 2s = 0 the transform stays finite exactly when
// lambda < 0, with limit Gamma(|lambda|) 2^{|lambda|-1} (ab)^{-|lambda|} / K_lambda(ab).
ExtendedReal log_laplace_gig(const Gig& law, double s) {
  const double u2 = law.b() * law.b() + 2.0 * s;
  const double ab = law.a() * law.b();
  if (u2 < 0.0) return ExtendedReal::positive_infinity();
  if (u2 == 0.0) {
    if (law.lambda() >= 0.0) return ExtendedReal::positive_infinity();
    const double al = -law.lambda();
    return specfun::log_gamma(al) + (al - 1.0) * std::log(2.0) - al * std::log(ab) -
           specfun::log_bessel_k(law.lambda(), ab);
  }
  const double u = std::sqrt(u2);
  return law.lambda() * (std::log(law.b()) - 0.5 * std::log(u2)) +
         specfun::log_bessel_k(law.lambda(), law.a() * u) -
         specfun::log_bessel_k(law.lambda(), ab);
}

}  // namespace

ExtendedReal log_laplace(const MixingLaw& law, double s) {
  return std::visit(
      [s](const auto& l) -> ExtendedReal {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, FiniteGammaConvolution>) return log_laplace_fgc(l, s);
        if constexpr (std::is_same_v<T, Gig>) return log_laplace_gig(l, s);
        if constexpr (std::is_same_v<T, AtomicGgc>) return log_laplace_atoms(l, s);
      },
      law);
}

ExtendedReal laplace(const MixingLaw& law, double s) {
  const ExtendedReal ll = log_laplace(law, s);
  if (ll.divergent()) return ExtendedReal::positive_infinity();
  return std::exp(ll.value());
}

double mean(const MixingLaw& law) {
  return std::visit(
      [](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, FiniteGammaConvolution>) {
          double m = l.tau();
          for (const auto& c : l.components()) m += c.shape * c.scale;
          return m;
        }
        if constexpr (std::is_same_v<T, Gig>) {
          const double ab = l.a() * l.b();
          return l.a() / l.b() *
                 std::exp(specfun::log_bessel_k(l.lambda() + 1.0, ab) -
                          specfun::log_bessel_k(l.lambda(), ab));
        }
        if constexpr (std::is_same_v<T, AtomicGgc>) {
          double m = l.generator().tau();
          for (const auto& a : l.generator().atoms()) m += a.weight / a.location;
          return m;
        }
      },
      law);
}

double integrability_number(const MixingLaw& law) {
  return std::visit(
      [](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, FiniteGammaConvolution>)
          return -1.0 / l.components().back().scale;
        if constexpr (std::is_same_v<T, Gig>) return -0.5 * l.b() * l.b();
        if constexpr (std::is_same_v<T, AtomicGgc>)
          return -l.generator().atoms().front().location;
      },
      law);
}

double thorin_partial_mean(const MixingLaw& law, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("thorin_partial_mean: delta must be > 0");
  const ThorinPair gen = as_thorin(law);
  double g = 0.0;
  for (const auto& a : gen.atoms()) {
    if (a.location <= delta) g += a.weight / a.location;
  }
  return g;
}

double wiener_gamma_h(const ThorinPair& generator, double s) {
  if (!(s > 0.0)) throw std::domain_error("wiener_gamma_h: s must be > 0");
  double cum = 0.0;
  for (const auto& a : generator.atoms()) {
    cum += a.weight;
    if (s <= cum) return 1.0 / a.location;
  }
  return 0.0;
}

ThorinPair as_thorin(const MixingLaw& law) {
  return std::visit(
      [](const auto& l) -> ThorinPair {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, FiniteGammaConvolution>) {
          std::vector<ThorinAtom> atoms;
          atoms.reserve(l.components().size());
          for (const auto& c : l.components())
            atoms.push_back({1.0 / c.scale, c.shape});
          return ThorinPair(l.tau(), std::move(atoms));
        }
        if constexpr (std::is_same_v<T, Gig>) {
          throw unsupported_law_error(
              "as_thorin: the GIG law carries no explicit Thorin generator");
        }
        if constexpr (std::is_same_v<T, AtomicGgc>) return l.generator();
      },
      law);
}

FiniteGammaConvolution to_gamma_convolution(const ThorinPair& generator) {
  std::vector<GammaComponent> components;
  components.reserve(generator.atoms().size());
  for (const auto& a : generator.atoms())
    components.push_back({a.weight, 1.0 / a.location});
  return FiniteGammaConvolution(generator.tau(), std::move(components));
}

double moschopoulos_bound(const FiniteGammaConvolution& conv, double x) {
  if (conv.tau() != 0.0)
    throw std::invalid_argument("moschopoulos_bound: requires zero drift");
  const auto& comps = conv.components();
  if (comps.size() < 2)
    throw std::invalid_argument(
        "moschopoulos_bound: requires at least two components with distinct scales");
  if (!(x > 0.0)) throw std::domain_error("moschopoulos_bound: x must be > 0");

  const double beta_m = comps.front().scale;  // canonical order: smallest first
  double log_c = 0.0;
  double rho = 0.0;
  double v = 0.0;
  for (const auto& c : comps) {
    rho += c.shape;
    log_c += c.shape * std::log(beta_m / c.scale);
    if (c.scale != beta_m) v = std::max(v, 1.0 - beta_m / c.scale);
  }
  const double log_bound = log_c - rho * std::log(beta_m) - specfun::log_gamma(rho) +
                           (rho - 1.0) * std::log(x) - x * (1.0 - v) / beta_m;
  return std::exp(log_bound);
}

std::string law_kind(const MixingLaw& law) {
  return std::visit(
      [](const auto& l) -> std::string {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, FiniteGammaConvolution>)
          return "finite_gamma_convolution";
        if constexpr (std::is_same_v<T, Gig>) return "gig";
        if constexpr (std::is_same_v<T, AtomicGgc>) return "atomic_ggc";
      },
      law);
}

std::string law_descriptor(const MixingLaw& law) {
  return std::visit(
      [](const auto& l) -> std::string {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, FiniteGammaConvolution>) {
          std::string out = "finite_gamma_convolution tau=" + format_number(l.tau()) +
                            " components=[";
          for (std::size_t i = 0; i < l.components().size(); ++i) {
            if (i) out += ", ";
            out += "[" + format_number(l.components()[i].shape) + ", " +
                   format_number(l.components()[i].scale) + "]";
          }
          return out + "]";
        }
        if constexpr (std::is_same_v<T, Gig>) {
          return "gig lambda=" + format_number(l.lambda()) + " a=" + format_number(l.a()) +
                 " b=" + format_number(l.b());
        }
        if constexpr (std::is_same_v<T, AtomicGgc>) {
          std::string out = "atomic_ggc tau=" + format_number(l.generator().tau()) + " atoms=[";
          const auto& atoms = l.generator().atoms();
          for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) out += ", ";
            out += "[" + format_number(atoms[i].location) + ", " +
                   format_number(atoms[i].weight) + "]";
          }
          return out + "]";
        }
      },
      law);
}

}  // namespace ggcport
