#ifndef TSREACH_NOISE_HPP
#define TSREACH_NOISE_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tsreach/series.hpp"
#include "tsreach/star.hpp"

namespace tsreach {

/// Where bounded L-infinity sensor noise lands on a window.
enum class NoiseKind {
  kSFSI,  // one feature, one time step
  kSFAI,  // one feature, every time step
  kMFSI,  // every feature, one time step
  kMFAI,  // every feature, every time step
};

/// What the noise percentage is a percentage of.
enum class NoiseReference {
  kFeatureWindowMean,  // |mean of the feature over the window|
  kValueAtPoint,       // |value of the perturbed coordinate|
};

std::string to_string(NoiseKind kind);
std::string to_string(NoiseReference reference);
NoiseKind parse_noise_kind(const std::string& text);
NoiseReference parse_noise_reference(const std::string& text);

/// Feature and time indices are one-based. A missing time step means the
/// last step of the window.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kSFSI;
  std::optional<long> feature;
  std::optional<long> time_step;
  double epsilon_percent = 0.0;
  NoiseReference reference = NoiseReference::kFeatureWindowMean;

  /// Throws InvalidArgument when a required index is missing, out of range
  /// for `window`, or epsilon is negative.
  void validate(const SeriesWindow& window) const;
};

/// Per-coordinate noise radii over the flattened window.
struct NoiseRadii {
  Eigen::VectorXd radii;
  /// Zero-based features whose window mean was ~0, so the standard
  /// deviation replaced it as the reference.
  std::vector<Eigen::Index> std_fallback_features;
};

NoiseRadii noise_radii(const SeriesWindow& window, const NoiseSpec& spec);

/// Box star centered on the flattened window with one generator per
/// perturbed coordinate of positive radius.
Star make_noise_star(const SeriesWindow& window, const NoiseSpec& spec);

/// Largest per-coordinate radius: the L-infinity distance from the window
/// to the farthest member of its noise star.
double linf_radius(const SeriesWindow& window, const NoiseSpec& spec);

}  // namespace tsreach

#endif  // TSREACH_NOISE_HPP
