#ifndef TSREACH_METRICS_HPP
#define TSREACH_METRICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "tsreach/interval.hpp"

namespace tsreach {

/// Verdict at one time step: estimated (reachable) output range against
/// the allowable range around the true target.
struct StepVerdict {
  long time_index = 0;
  Interval estimated;
  Interval allowable;
  bool robust = false;  // RV
  double overlap = 0.0; // PO in [0, 1]
};

struct MonotonicityVerdict {
  long time_index = 0;
  double slope_lower = 0.0;
  double slope_upper = 0.0;
  bool pass = false;
};

struct CampaignResult {
  std::vector<StepVerdict> verdicts;
  double pr = 0.0;   // percent
  double por = 0.0;  // percent
  std::vector<double> runtimes;
  std::optional<std::vector<MonotonicityVerdict>> monotonicity;
};

/// RV: 1 iff estimated lies inside allowable (closed comparisons).
bool robustness_value(const Interval& estimated, const Interval& allowable);

/// PO: |estimated n allowable| / |estimated| in [0, 1]. A zero-width
/// estimate scores 1 when inside the allowable range, else 0.
double percentage_overlap(const Interval& estimated, const Interval& allowable);

StepVerdict evaluate_step(long time_index, const Interval& estimated, const Interval& allowable);

/// PR = 100 * robust steps / steps. Throws InvalidArgument when empty.
double percentage_robustness(std::span<const StepVerdict> verdicts);

/// POR = 100 * mean PO. Throws InvalidArgument when empty.
double percentage_overlap_robustness(std::span<const StepVerdict> verdicts);

enum class AllowableMode { kRelativePercent, kAbsoluteOffset };

/// Allowable range around `actual`: actual * (1 -/+ width / 100) or
/// actual -/+ width, optionally with the lower end clamped at zero.
Interval allowable_bounds(double actual, AllowableMode mode, double width, bool clamp_at_zero);

/// Least-squares slope of `values` against 0, 1, ..., n-1.
double least_squares_slope(std::span<const double> values);

/// Fits lines through the last `window` lower and upper bounds of
/// `history` (oldest first); passes when both slopes are <= slope_tolerance.
MonotonicityVerdict monotonicity_check(std::span<const Interval> history, std::size_t window,
                                       double slope_tolerance = 0.0, long time_index = 0);

}  // namespace tsreach

#endif  // TSREACH_METRICS_HPP
