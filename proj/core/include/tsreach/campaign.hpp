#ifndef TSREACH_CAMPAIGN_HPP
#define TSREACH_CAMPAIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tsreach/layers.hpp"
#include "tsreach/metrics.hpp"
#include "tsreach/model_io.hpp"
#include "tsreach/noise.hpp"

namespace tsreach {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportVersion = 1;

/// Everything needed to re-run a verification campaign. Time steps are
/// one-based; `start` is the end step of the first window (0 means the
/// first full window, i.e. window_length).
struct CampaignConfig {
  std::string model;
  std::string reach_model;  // reachability on a different file (fault injection)
  std::string data;
  std::vector<std::string> features;
  std::string target;
  long window_length = 30;
  long start = 0;
  long windows = 100;
  NoiseSpec noise;
  std::vector<double> epsilon_list;
  AllowableMode allow_mode = AllowableMode::kRelativePercent;
  double allow_width = 5.0;
  bool clamp_zero = false;
  bool clamp_estimate = false;
  TargetOffset target_offset = TargetOffset::kSameStep;
  bool zscore = false;
  long output_channel = 1;  // one-based
  std::size_t mono_k = 5;
  double slope_tol = 0.0;
  std::size_t selfcheck_samples = 100;
  std::size_t oracle_samples = 10000;
  std::uint64_t seed = 42;
  std::string out;

  long first_end_step() const { return start > 0 ? start : window_length; }

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

std::string config_to_json(const CampaignConfig& config);
CampaignConfig config_from_json(const std::string& text);
/// Relative model and data paths are taken relative to the config file.
CampaignConfig load_config(const std::string& path);

/// One verified window.
struct WindowRecord {
  long time_index = 0;
  double actual = 0.0;
  double prediction = 0.0;
  StepVerdict verdict;
  double runtime_seconds = 0.0;
  Eigen::Index generators = 0;
  std::vector<Eigen::Index> std_fallback_features;
  std::size_t selfcheck_violations = 0;
};

struct CampaignRun {
  CampaignConfig config;
  std::vector<WindowRecord> records;
  CampaignResult result;
  double avg_runtime_seconds = 0.0;
  std::size_t selfcheck_violations = 0;
};

/// Verifies `config.windows` consecutive windows. The self-check samples
/// `config.selfcheck_samples` members per window (0 disables it).
CampaignRun run_campaign(const CampaignConfig& config, const Network& net, const Dataset& data);

/// As above with `reach_net` used for reachability and `net` for the
/// concrete predictions and self-check.
CampaignRun run_campaign(const CampaignConfig& config, const Network& net, const Network& reach_net,
                         const Dataset& data);

/// Loads the model and data named in the config.
CampaignRun run_campaign(const CampaignConfig& config);

/// Dataset named by the config, z-scored when requested.
Dataset load_campaign_data(const CampaignConfig& config);

struct MonotonicityReport {
  std::vector<MonotonicityVerdict> verdicts;
  double pass_fraction = 0.0;  // percent
};

/// Sliding least-squares check over the estimated bounds of a run.
MonotonicityReport check_monotonicity(const CampaignRun& run);

struct SweepRow {
  double epsilon = 0.0;
  double pr = 0.0;
  double por = 0.0;
  double avg_runtime_seconds = 0.0;
  std::vector<double> widths;  // estimated width per window
  std::size_t selfcheck_violations = 0;
};

std::vector<SweepRow> run_sweep(const CampaignConfig& config, const Network& net, const Dataset& data);

struct OracleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct OracleCheckReport {
  std::vector<OracleCheck> checks;
  bool passed() const;
};

/// Cross-checks LP bounds against vertex enumeration, every conv layer
/// against its explicit matrix and the whole network against sampling.
/// The sampling check perturbs every coordinate (MFAI) at the configured
/// epsilon, or 5% when that is zero.
OracleCheckReport run_oracle_check(const CampaignConfig& config, const Network& net,
                                   const Network& reach_net, const Dataset* data);

/// Small deterministic conv/ReLU/fc network used when no model is given.
Network fixture_network();

// Serialization. `include_timing = false` drops every wall-clock field so
// that identical runs serialize byte-identically.
std::string bounds_csv(const CampaignRun& run, bool include_timing = true);
std::string verify_json(const CampaignRun& run, bool include_timing = true);
std::string monotonicity_json(const CampaignRun& run, const MonotonicityReport& report);
std::string sweep_json(const CampaignConfig& config, const std::vector<SweepRow>& rows,
                       bool include_timing = true);
std::string sweep_csv(const std::vector<SweepRow>& rows, bool include_timing = true);
std::string oracle_check_json(const CampaignConfig& config, const OracleCheckReport& report);

}  // namespace tsreach

#endif  // TSREACH_CAMPAIGN_HPP
