#pragma once

#include <limits>

namespace ggcport {

/// Real value extended with a signalled infinity.
///
/// The `divergent` tag marks a quantity that is genuinely infinite (a Laplace
/// transform evaluated past its abscissa of convergence, an expected utility
/// of an inadmissible portfolio), as opposed to a finite quantity that merely
/// overflowed double range.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double value) : value_(value), divergent_(false) {}

  static constexpr ExtendedReal positive_infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity(), true);
  }
  static constexpr ExtendedReal negative_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity(), true);
  }

  constexpr bool divergent() const { return divergent_; }
  constexpr bool finite() const { return !divergent_; }

  /// Numeric view; a divergent value maps to +-inf.
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.divergent_ == b.divergent_ && (a.divergent_ ? a.value_ == b.value_ : a.value_ == b.value_);
  }

 private:
  constexpr ExtendedReal(double value, bool divergent)
      : value_(value), divergent_(divergent) {}

  double value_;
  bool divergent_;
};

}  // namespace ggcport
