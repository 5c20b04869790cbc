#include "tsreach/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsreach/errors.hpp"

namespace tsreach {

bool robustness_value(const Interval& estimated, const Interval& allowable) {
  return estimated.lower() >= allowable.lower() && estimated.upper() <= allowable.upper();
}

double percentage_overlap(const Interval& estimated, const Interval& allowable) {
  if (estimated.width() <= 0.0) return allowable.contains(estimated.lower()) ? 1.0 : 0.0;
  const auto common = estimated.intersect(allowable);
  if (!common) return 0.0;
  return std::clamp(common->width() / estimated.width(), 0.0, 1.0);
}

StepVerdict evaluate_step(long time_index, const Interval& estimated, const Interval& allowable) {
  StepVerdict v;
  v.time_index = time_index;
  v.estimated = estimated;
  v.allowable = allowable;
  v.robust = robustness_value(estimated, allowable);
  // Containment is the exact full-overlap case; keep PO consistent with RV
  // when the ratio rounds below one.
  v.overlap = v.robust ? 1.0 : percentage_overlap(estimated, allowable);
  return v;
}

double percentage_robustness(std::span<const StepVerdict> verdicts) {
  if (verdicts.empty()) throw InvalidArgument("percentage_robustness: no verdicts");
  const auto robust = std::count_if(verdicts.begin(), verdicts.end(),
                                    [](const StepVerdict& v) { return v.robust; });
  return 100.0 * static_cast<double>(robust) / static_cast<double>(verdicts.size());
}

double percentage_overlap_robustness(std::span<const StepVerdict> verdicts) {
  if (verdicts.empty()) throw InvalidArgument("percentage_overlap_robustness: no verdicts");
  double sum = 0.0;
  for (const auto& v : verdicts) sum += v.overlap;
  return 100.0 * sum / static_cast<double>(verdicts.size());
}

Interval allowable_bounds(double actual, AllowableMode mode, double width, bool clamp_at_zero) {
  if (!(width >= 0.0)) throw InvalidArgument("allowable_bounds: width must be >= 0");
  double lo;
  double hi;
  if (mode == AllowableMode::kRelativePercent) {
    const double a = actual * (1.0 - width / 100.0);
    const double b = actual * (1.0 + width / 100.0);
    lo = std::min(a, b);
    hi = std::max(a, b);
  } else {
    lo = actual - width;
    hi = actual + width;
  }
  if (clamp_at_zero) {
    lo = std::max(lo, 0.0);
    hi = std::max(hi, lo);
  }
  return Interval(lo, hi);
}

double least_squares_slope(std::span<const double> values) {
  const auto n = values.size();
  if (n < 2) throw InvalidArgument("least_squares_slope: need at least two points");
  const double x_mean = static_cast<double>(n - 1) / 2.0;
  double y_mean = 0.0;
  for (double y : values) y_mean += y;
  y_mean /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    sxy += dx * (values[i] - y_mean);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

MonotonicityVerdict monotonicity_check(std::span<const Interval> history, std::size_t window,
                                       double slope_tolerance, long time_index) {
  if (window < 2) throw InvalidArgument("monotonicity_check: window must be >= 2");
  if (history.size() < window) {
    throw InvalidArgument("monotonicity_check: history of " + std::to_string(history.size()) +
                          " is shorter than the window " + std::to_string(window));
  }
  const auto recent = history.last(window);
  std::vector<double> lower(window);
  std::vector<double> upper(window);
  for (std::size_t i = 0; i < window; ++i) {
    lower[i] = recent[i].lower();
    upper[i] = recent[i].upper();
  }
  MonotonicityVerdict v;
  v.time_index = time_index;
  v.slope_lower = least_squares_slope(lower);
  v.slope_upper = least_squares_slope(upper);
  v.pass = v.slope_lower <= slope_tolerance && v.slope_upper <= slope_tolerance;
  return v;
}

}  // namespace tsreach
