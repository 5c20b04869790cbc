#ifndef TSREACH_INTERVAL_HPP
#define TSREACH_INTERVAL_HPP

#include <optional>

namespace tsreach {

/// Closed interval [lower, upper] with lower <= upper.
class Interval {
 public:
  Interval() = default;
  Interval(double lower, double upper);

  static Interval point(double value) { return Interval(value, value); }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double width() const { return upper_ - lower_; }
  double midpoint() const { return 0.5 * (lower_ + upper_); }

  bool contains(double value) const { return lower_ <= value && value <= upper_; }
  bool contains(const Interval& other) const {
    return lower_ <= other.lower_ && other.upper_ <= upper_;
  }

  /// Widen both ends by `amount` (>= 0).
  Interval widened(double amount) const;

  /// Intersection, or nullopt when disjoint.
  std::optional<Interval> intersect(const Interval& other) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lower_ = 0.0;
  double upper_ = 0.0;
};

}  // namespace tsreach

#endif  // TSREACH_INTERVAL_HPP
