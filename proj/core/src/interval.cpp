#include "tsreach/interval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsreach/errors.hpp"

namespace tsreach {

Interval::Interval(double lower, double upper) : lower_(lower), upper_(upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw InvalidArgument("interval requires lower <= upper, got [" + std::to_string(lower) +
                          ", " + std::to_string(upper) + "]");
  }
}

Interval Interval::widened(double amount) const {
  if (amount < 0.0) throw InvalidArgument("interval widening must be non-negative");
  return Interval(lower_ - amount, upper_ + amount);
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
  const double lo = std::max(lower_, other.lower_);
  const double hi = std::min(upper_, other.upper_);
  if (lo > hi) return std::nullopt;
  return Interval(lo, hi);
}

}  // namespace tsreach
