#include "tsreach/noise.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "tsreach/errors.hpp"

namespace tsreach {

namespace {

constexpr double kMeanFloor = 1e-12;

bool single_feature(NoiseKind kind) { return kind == NoiseKind::kSFSI || kind == NoiseKind::kSFAI; }
bool single_instance(NoiseKind kind) { return kind == NoiseKind::kSFSI || kind == NoiseKind::kMFSI; }

}  // namespace

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kSFSI: return "SFSI";
    case NoiseKind::kSFAI: return "SFAI";
    case NoiseKind::kMFSI: return "MFSI";
    case NoiseKind::kMFAI: return "MFAI";
  }
  return "?";
}

std::string to_string(NoiseReference reference) {
  return reference == NoiseReference::kFeatureWindowMean ? "mean" : "point";
}

NoiseKind parse_noise_kind(const std::string& text) {
  std::string upper;
  for (char ch : text) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (upper == "SFSI") return NoiseKind::kSFSI;
  if (upper == "SFAI") return NoiseKind::kSFAI;
  if (upper == "MFSI") return NoiseKind::kMFSI;
  if (upper == "MFAI") return NoiseKind::kMFAI;
  throw InvalidArgument("unknown noise kind '" + text + "' (expected SFSI, SFAI, MFSI or MFAI)");
}

NoiseReference parse_noise_reference(const std::string& text) {
  if (text == "mean") return NoiseReference::kFeatureWindowMean;
  if (text == "point") return NoiseReference::kValueAtPoint;
  throw InvalidArgument("unknown noise reference '" + text + "' (expected mean or point)");
}

void NoiseSpec::validate(const SeriesWindow& window) const {
  if (!(epsilon_percent >= 0.0) || !std::isfinite(epsilon_percent)) {
    throw InvalidArgument("noise: epsilon percent must be finite and >= 0");
  }
  if (single_feature(kind)) {
    if (!feature) throw InvalidArgument("noise: " + to_string(kind) + " requires a feature index");
    if (*feature < 1 || *feature > window.features()) {
      throw InvalidArgument("noise: feature " + std::to_string(*feature) + " out of range [1, " +
                            std::to_string(window.features()) + "]");
    }
  }
  if (single_instance(kind) && time_step) {
    if (*time_step < 1 || *time_step > window.length()) {
      throw InvalidArgument("noise: time step " + std::to_string(*time_step) +
                            " out of range [1, " + std::to_string(window.length()) + "]");
    }
  }
}

NoiseRadii noise_radii(const SeriesWindow& window, const NoiseSpec& spec) {
  spec.validate(window);
  const Eigen::Index nf = window.features();
  const Eigen::Index ts = window.length();
  const Eigen::MatrixXd& x = window.values();
  const double fraction = spec.epsilon_percent / 100.0;

  NoiseRadii out;
  out.radii = Eigen::VectorXd::Zero(nf * ts);
  if (fraction == 0.0) return out;

  Eigen::Index f_begin = 0;
  Eigen::Index f_end = nf;
  if (single_feature(spec.kind)) {
    f_begin = *spec.feature - 1;
    f_end = f_begin + 1;
  }
  Eigen::Index t_begin = 0;
  Eigen::Index t_end = ts;
  if (single_instance(spec.kind)) {
    t_begin = spec.time_step.value_or(ts) - 1;
    t_end = t_begin + 1;
  }

  for (Eigen::Index f = f_begin; f < f_end; ++f) {
    double feature_reference = 0.0;
    if (spec.reference == NoiseReference::kFeatureWindowMean) {
      const double mean = x.row(f).mean();
      feature_reference = std::abs(mean);
      if (feature_reference < kMeanFloor) {
        const double variance = (x.row(f).array() - mean).square().mean();
        feature_reference = std::sqrt(variance);
        out.std_fallback_features.push_back(f);
      }
    }
    for (Eigen::Index t = t_begin; t < t_end; ++t) {
      const double reference = spec.reference == NoiseReference::kFeatureWindowMean
                                   ? feature_reference
                                   : std::abs(x(f, t));
      out.radii[f * ts + t] = fraction * reference;
    }
  }
  return out;
}

Star make_noise_star(const SeriesWindow& window, const NoiseSpec& spec) {
  return Star::from_box(window.flattened(), noise_radii(window, spec).radii);
}

double linf_radius(const SeriesWindow& window, const NoiseSpec& spec) {
  const Eigen::VectorXd radii = noise_radii(window, spec).radii;
  return radii.size() == 0 ? 0.0 : radii.maxCoeff();
}

}  // namespace tsreach
