#ifndef TSREACH_MODEL_IO_HPP
#define TSREACH_MODEL_IO_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsreach/layers.hpp"
#include "tsreach/series.hpp"

namespace tsreach {

// ---------------------------------------------------------------------------
// Network interchange file
// ---------------------------------------------------------------------------
//
//   {
//     "format_version": 1,
//     "input_features": 5,
//     "layers": [
//       {"kind": "conv1d", "weights": [[[...]]],   // [filter][channel][tap]
//        "bias": [...], "stride": 1, "dilation": 1, "pad_left": 2, "pad_right": 0},
//       {"kind": "relu"},
//       {"kind": "fc", "weights": [[...]], "bias": [...]}  // [output][input]
//     ]
//   }

inline constexpr int kNetworkFormatVersion = 1;

Network parse_network(const std::string& text);
std::string serialize_network(const Network& net);

Network load_network(const std::filesystem::path& path);
void save_network(const Network& net, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Series data
// ---------------------------------------------------------------------------

struct Normalization {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // population estimator
};

/// A full multivariate series (features x T) with its regression target.
struct Dataset {
  std::vector<std::string> feature_names;
  std::string target_name;
  Eigen::MatrixXd features;  // n_f x T
  Eigen::VectorXd target;    // T
  Normalization normalization;  // empty until zscore()

  Eigen::Index length() const { return features.cols(); }
};

/// Reads a comma-separated file with a header row, keeping the requested
/// feature columns in the given order plus the target column. Other columns
/// (e.g. a time column) are ignored.
Dataset load_series(const std::filesystem::path& path, const std::vector<std::string>& feature_columns,
                    const std::string& target_column);
Dataset parse_series(const std::string& text, const std::vector<std::string>& feature_columns,
                     const std::string& target_column);

/// Writes features then target, 17 significant digits.
void save_series(const Dataset& ds, const std::filesystem::path& path);

enum class TargetOffset {
  kSameStep,  // target at the window's last step
  kNextStep,  // target one step after the window
};

/// Window covering one-based steps [end_step - length + 1, end_step] and its
/// target value.
std::pair<SeriesWindow, double> window(const Dataset& ds, long end_step, long length,
                                       TargetOffset offset = TargetOffset::kSameStep);

/// Per-feature (x - mean) / std with population std. Throws InvalidArgument
/// naming the feature when a std is zero.
Dataset zscore(const Dataset& ds);
Dataset denormalize(const Dataset& ds);

/// Mean/std per feature without changing the data.
Normalization feature_statistics(const Eigen::MatrixXd& features);

// ---------------------------------------------------------------------------
// Feature screening
// ---------------------------------------------------------------------------

/// exp(std_j(x_j(N_j)) / mean_j |x_j(1) - x_j(N_j)|) per feature, over
/// units j, each given as an n_f x N_j trajectory (std is the population
/// estimator). NaN when the denominator is zero.
Eigen::VectorXd prognosability(const std::vector<Eigen::MatrixXd>& units);

struct ScreeningResult {
  std::vector<Eigen::Index> kept;       // zero-based features
  std::vector<Eigen::Index> dropped;
  std::vector<Eigen::Index> above_one;  // kept features scoring > 1
  Eigen::VectorXd scores;
};

/// Drops features that are constant across every unit or score NaN.
ScreeningResult screen_features(const std::vector<Eigen::MatrixXd>& units);

/// One-based column indices (out of the 26 C-MAPSS columns) retained for
/// turbofan RUL networks: operational settings 1-2 and sensors 2-4, 6-9,
/// 11-15, 17, 20-21.
const std::vector<int>& turbofan_reduced_columns();

/// Names of the 26 C-MAPSS columns: unit, time, op_setting_1..3, sensor_1..21.
const std::vector<std::string>& turbofan_column_names();

}  // namespace tsreach

#endif  // TSREACH_MODEL_IO_HPP
