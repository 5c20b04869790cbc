// tsreach: batch verification campaigns over sliding windows.
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "tsreach/campaign.hpp"
#include "tsreach/errors.hpp"

namespace {

using tsreach::CampaignConfig;

enum ExitCode { kOk = 0, kError = 1, kSelfCheckFailed = 2, kOracleFailed = 3 };

std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
    if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
  }
  return {};
}

void add_campaign_options(CLI::App& app, CampaignConfig& cfg, bool& no_timing, std::string& config_path) {
  app.add_option("--config", config_path, "JSON file with the CampaignConfig shape; flags override it");
  app.add_option("--model", cfg.model, "network JSON");
  app.add_option("--reach-model", cfg.reach_model,
                 "run reachability on this network instead (fault injection)");
  app.add_option("--data", cfg.data, "CSV series with a header row");
  app.add_option("--features", cfg.features, "feature columns")->delimiter(',');
  app.add_option("--target", cfg.target, "target column");
  app.add_option_function<std::string>(
      "--noise-kind", [&](const std::string& v) { cfg.noise.kind = tsreach::parse_noise_kind(v); },
      "SFSI, SFAI, MFSI or MFAI");
  app.add_option_function<long>("--feature", [&](long v) { cfg.noise.feature = v; },
                                "noisy feature (one-based)");
  app.add_option_function<long>("--time-step", [&](long v) { cfg.noise.time_step = v; },
                                "noisy time step within the window (one-based)");
  app.add_option("--epsilon", cfg.noise.epsilon_percent, "noise magnitude in percent");
  app.add_option("--epsilon-list", cfg.epsilon_list, "magnitudes for sweep")->delimiter(',');
  app.add_option_function<std::string>(
      "--reference",
      [&](const std::string& v) { cfg.noise.reference = tsreach::parse_noise_reference(v); },
      "noise reference: mean or point");
  app.add_option_function<std::string>(
      "--allow-mode",
      [&](const std::string& v) {
        if (v == "relative") {
          cfg.allow_mode = tsreach::AllowableMode::kRelativePercent;
        } else if (v == "absolute") {
          cfg.allow_mode = tsreach::AllowableMode::kAbsoluteOffset;
        } else {
          throw CLI::ValidationError("--allow-mode", "expected relative or absolute");
        }
      },
      "relative (percent) or absolute");
  app.add_option("--allow-width", cfg.allow_width, "allowable half width");
  app.add_flag("--clamp-zero", cfg.clamp_zero, "clamp the allowable lower bound at zero");
  app.add_flag("--clamp-estimate", cfg.clamp_estimate, "clamp the estimated lower bound at zero");
  app.add_option("--window-length", cfg.window_length, "time steps per window");
  app.add_option("--windows", cfg.windows, "number of consecutive windows");
  app.add_option("--start", cfg.start, "end step of the first window (one-based)");
  app.add_option_function<std::string>(
      "--target-offset",
      [&](const std::string& v) {
        if (v == "same") {
          cfg.target_offset = tsreach::TargetOffset::kSameStep;
        } else if (v == "next") {
          cfg.target_offset = tsreach::TargetOffset::kNextStep;
        } else {
          throw CLI::ValidationError("--target-offset", "expected same or next");
        }
      },
      "same or next");
  app.add_flag("--zscore", cfg.zscore, "z-score features and target");
  app.add_option("--output-channel", cfg.output_channel, "network output channel (one-based)");
  app.add_option("--mono-k", cfg.mono_k, "monotonicity window");
  app.add_option("--slope-tol", cfg.slope_tol, "monotonicity slope tolerance");
  app.add_option("--selfcheck-samples", cfg.selfcheck_samples, "sampled members per window");
  app.add_option("--samples", cfg.oracle_samples, "oracle-check samples");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "output prefix; .json/.csv are appended");
  app.add_flag("--no-timing", no_timing, "omit wall-clock fields from reports");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void emit(const CampaignConfig& cfg, const std::string& json, const std::string& csv = {}) {
  if (cfg.out.empty()) {
    std::cout << json;
    return;
  }
  write_file(cfg.out + ".json", json);
  if (!csv.empty()) write_file(cfg.out + ".csv", csv);
}

void print_summary(const tsreach::CampaignRun& run) {
  std::cerr << "windows " << run.records.size() << "  PR " << run.result.pr << "%  POR "
            << run.result.por << "%  avg runtime " << run.avg_runtime_seconds << " s\n";
}

int report_selfcheck(const tsreach::CampaignRun& run) {
  if (run.selfcheck_violations == 0) return kOk;
  std::cerr << "error: soundness self-check found " << run.selfcheck_violations
            << " sampled outputs outside the reachable bounds\n";
  return kSelfCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CampaignConfig cfg;
  bool no_timing = false;
  std::string config_path;
  try {
    if (auto path = find_config_path(argc, argv); !path.empty()) cfg = tsreach::load_config(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }

  CLI::App app{"Star-set reachability verification for time-series regression networks"};
  app.require_subcommand(1);
  auto* bounds = app.add_subcommand("bounds", "per-window reachable and allowable bounds");
  auto* verify = app.add_subcommand("verify", "PR/POR over a campaign");
  auto* sweep = app.add_subcommand("sweep", "PR/POR over a list of noise magnitudes");
  auto* mono = app.add_subcommand("monotonicity", "least-squares trend of the estimated bounds");
  auto* oracle = app.add_subcommand("oracle-check", "cross-check against independent oracles");
  for (auto* sub : {bounds, verify, sweep, mono, oracle}) add_campaign_options(*sub, cfg, no_timing, config_path);

  CLI11_PARSE(app, argc, argv);
  const bool timing = !no_timing;

  try {
    if (bounds->parsed()) {
      const auto run = tsreach::run_campaign(cfg);
      if (cfg.out.empty()) {
        std::cout << tsreach::bounds_csv(run, timing);
      } else {
        emit(cfg, tsreach::verify_json(run, timing), tsreach::bounds_csv(run, timing));
      }
      print_summary(run);
      return report_selfcheck(run);
    }
    if (verify->parsed()) {
      const auto run = tsreach::run_campaign(cfg);
      emit(cfg, tsreach::verify_json(run, timing));
      print_summary(run);
      return report_selfcheck(run);
    }
    if (sweep->parsed()) {
      if (cfg.model.empty()) throw tsreach::InvalidArgument("no model file given");
      const auto net = tsreach::load_network(cfg.model);
      const auto rows = tsreach::run_sweep(cfg, net, tsreach::load_campaign_data(cfg));
      emit(cfg, tsreach::sweep_json(cfg, rows, timing), tsreach::sweep_csv(rows, timing));
      int code = kOk;
      for (const auto& r : rows) {
        std::cerr << "epsilon " << r.epsilon << "%  PR " << r.pr << "%  POR " << r.por << "%\n";
        if (r.selfcheck_violations > 0) code = kSelfCheckFailed;
      }
      return code;
    }
    if (mono->parsed()) {
      const auto run = tsreach::run_campaign(cfg);
      const auto report = tsreach::check_monotonicity(run);
      emit(cfg, tsreach::monotonicity_json(run, report), tsreach::bounds_csv(run, timing));
      std::cerr << "monotonicity pass " << report.pass_fraction << "% of "
                << report.verdicts.size() << " windows\n";
      return kOk;
    }
    if (oracle->parsed()) {
      const auto net = cfg.model.empty() ? tsreach::fixture_network() : tsreach::load_network(cfg.model);
      const auto reach_net = cfg.reach_model.empty() ? net : tsreach::load_network(cfg.reach_model);
      std::optional<tsreach::Dataset> data;
      if (!cfg.data.empty()) data = tsreach::load_campaign_data(cfg);
      const auto report = tsreach::run_oracle_check(cfg, net, reach_net, data ? &*data : nullptr);
      emit(cfg, tsreach::oracle_check_json(cfg, report));
      for (const auto& c : report.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      }
      return report.passed() ? kOk : kOracleFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
