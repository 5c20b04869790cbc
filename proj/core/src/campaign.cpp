#include "tsreach/campaign.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tsreach/errors.hpp"
#include "tsreach/oracle.hpp"

namespace tsreach {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string allow_mode_name(AllowableMode mode) {
  return mode == AllowableMode::kRelativePercent ? "relative" : "absolute";
}

AllowableMode parse_allow_mode(const std::string& text) {
  if (text == "relative") return AllowableMode::kRelativePercent;
  if (text == "absolute") return AllowableMode::kAbsoluteOffset;
  throw InvalidArgument("unknown allowable mode '" + text + "' (expected relative or absolute)");
}

std::string offset_name(TargetOffset offset) {
  return offset == TargetOffset::kSameStep ? "same" : "next";
}

TargetOffset parse_offset(const std::string& text) {
  if (text == "same") return TargetOffset::kSameStep;
  if (text == "next") return TargetOffset::kNextStep;
  throw InvalidArgument("unknown target offset '" + text + "' (expected same or next)");
}

json config_json(const CampaignConfig& c) {
  json j;
  j["model"] = c.model;
  j["reach_model"] = c.reach_model;
  j["data"] = c.data;
  j["features"] = c.features;
  j["target"] = c.target;
  j["window_length"] = c.window_length;
  j["start"] = c.start;
  j["windows"] = c.windows;
  json noise;
  noise["kind"] = to_string(c.noise.kind);
  noise["feature"] = c.noise.feature ? json(*c.noise.feature) : json(nullptr);
  noise["time_step"] = c.noise.time_step ? json(*c.noise.time_step) : json(nullptr);
  noise["epsilon"] = c.noise.epsilon_percent;
  noise["reference"] = to_string(c.noise.reference);
  j["noise"] = std::move(noise);
  j["epsilon_list"] = c.epsilon_list;
  j["allow_mode"] = allow_mode_name(c.allow_mode);
  j["allow_width"] = c.allow_width;
  j["clamp_zero"] = c.clamp_zero;
  j["clamp_estimate"] = c.clamp_estimate;
  j["target_offset"] = offset_name(c.target_offset);
  j["zscore"] = c.zscore;
  j["output_channel"] = c.output_channel;
  j["mono_k"] = c.mono_k;
  j["slope_tol"] = c.slope_tol;
  j["selfcheck_samples"] = c.selfcheck_samples;
  j["oracle_samples"] = c.oracle_samples;
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

template <class T>
void read_field(const json& j, const char* key, T& target) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  try {
    target = it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: field '") + key + "': " + e.what());
  }
}

Interval clamp_lower(const Interval& in) {
  const double lo = std::max(in.lower(), 0.0);
  return Interval(lo, std::max(in.upper(), lo));
}

std::string sci(double value) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << value;
  return out.str();
}

std::string window_context(long index, long end_step) {
  return "window " + std::to_string(index) + " (end step " + std::to_string(end_step) + "): ";
}

template <class Fn>
auto with_window_context(long index, long end_step, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(window_context(index, end_step) + e.what());
  } catch (const EmptySetError& e) {
    throw EmptySetError(window_context(index, end_step) + e.what());
  } catch (const InternalError& e) {
    throw InternalError(window_context(index, end_step) + e.what());
  }
}

json interval_pair(const char* lo_key, const char* hi_key, const Interval& i, json& target) {
  target[lo_key] = i.lower();
  target[hi_key] = i.upper();
  return target;
}

Star random_star(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m, Eigen::Index p) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> slack(0.05, 1.0);
  Eigen::VectorXd center(n);
  Eigen::MatrixXd basis(n, m);
  for (Eigen::Index i = 0; i < n; ++i) center[i] = normal(rng);
  for (Eigen::Index i = 0; i < basis.size(); ++i) basis.data()[i] = normal(rng);
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(m, -1.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(m, 1.0);
  Eigen::VectorXd inside(m);
  for (Eigen::Index j = 0; j < m; ++j) inside[j] = 0.5 * unit(rng);
  Eigen::MatrixXd c(p, m);
  for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = normal(rng);
  Eigen::VectorXd d(p);
  for (Eigen::Index i = 0; i < p; ++i) d[i] = c.row(i).dot(inside) + slack(rng);
  return Star(center, basis, c, d, lo, hi);
}

}  // namespace

void CampaignConfig::validate() const {
  if (window_length < 1) throw InvalidArgument("config: window_length must be >= 1");
  if (windows < 1) throw InvalidArgument("config: windows must be >= 1");
  if (start < 0) throw InvalidArgument("config: start must be >= 0");
  if (output_channel < 1) throw InvalidArgument("config: output_channel is one-based");
  if (mono_k < 2) throw InvalidArgument("config: mono_k must be >= 2");
  if (!(allow_width >= 0.0)) throw InvalidArgument("config: allow_width must be >= 0");
  if (!(noise.epsilon_percent >= 0.0)) throw InvalidArgument("config: epsilon must be >= 0");
  for (double e : epsilon_list) {
    if (!(e >= 0.0)) throw InvalidArgument("config: epsilon list entries must be >= 0");
  }
}

std::string config_to_json(const CampaignConfig& config) { return config_json(config).dump(2) + "\n"; }

CampaignConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  CampaignConfig c;
  read_field(j, "model", c.model);
  read_field(j, "reach_model", c.reach_model);
  read_field(j, "data", c.data);
  read_field(j, "features", c.features);
  read_field(j, "target", c.target);
  read_field(j, "window_length", c.window_length);
  read_field(j, "start", c.start);
  read_field(j, "windows", c.windows);
  if (auto it = j.find("noise"); it != j.end() && it->is_object()) {
    std::string kind;
    read_field(*it, "kind", kind);
    if (!kind.empty()) c.noise.kind = parse_noise_kind(kind);
    long value = 0;
    if (it->contains("feature") && !(*it)["feature"].is_null()) {
      read_field(*it, "feature", value);
      c.noise.feature = value;
    }
    if (it->contains("time_step") && !(*it)["time_step"].is_null()) {
      read_field(*it, "time_step", value);
      c.noise.time_step = value;
    }
    read_field(*it, "epsilon", c.noise.epsilon_percent);
    std::string reference;
    read_field(*it, "reference", reference);
    if (!reference.empty()) c.noise.reference = parse_noise_reference(reference);
  }
  read_field(j, "epsilon_list", c.epsilon_list);
  std::string text_value;
  read_field(j, "allow_mode", text_value);
  if (!text_value.empty()) c.allow_mode = parse_allow_mode(text_value);
  read_field(j, "allow_width", c.allow_width);
  read_field(j, "clamp_zero", c.clamp_zero);
  read_field(j, "clamp_estimate", c.clamp_estimate);
  text_value.clear();
  read_field(j, "target_offset", text_value);
  if (!text_value.empty()) c.target_offset = parse_offset(text_value);
  read_field(j, "zscore", c.zscore);
  read_field(j, "output_channel", c.output_channel);
  read_field(j, "mono_k", c.mono_k);
  read_field(j, "slope_tol", c.slope_tol);
  read_field(j, "selfcheck_samples", c.selfcheck_samples);
  read_field(j, "oracle_samples", c.oracle_samples);
  read_field(j, "seed", c.seed);
  read_field(j, "out", c.out);
  return c;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  CampaignConfig config = config_from_json(buf.str());
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  for (std::string* field : {&config.model, &config.reach_model, &config.data}) {
    if (!field->empty() && std::filesystem::path(*field).is_relative()) *field = (base / *field).string();
  }
  return config;
}

Dataset load_campaign_data(const CampaignConfig& config) {
  if (config.data.empty()) throw InvalidArgument("config: no data file given");
  if (config.features.empty()) throw InvalidArgument("config: no feature columns given");
  if (config.target.empty()) throw InvalidArgument("config: no target column given");
  Dataset ds = load_series(config.data, config.features, config.target);
  return config.zscore ? zscore(ds) : ds;
}

CampaignRun run_campaign(const CampaignConfig& config, const Network& net, const Dataset& data) {
  return run_campaign(config, net, net, data);
}

CampaignRun run_campaign(const CampaignConfig& config, const Network& net, const Network& reach_net,
                         const Dataset& data) {
  config.validate();
  if (data.features.rows() != net.input_features()) {
    throw InvalidArgument("campaign: data has " + std::to_string(data.features.rows()) +
                          " features, network expects " + std::to_string(net.input_features()));
  }
  if (config.output_channel > net.output_channels()) {
    throw InvalidArgument("campaign: output channel " + std::to_string(config.output_channel) +
                          " exceeds network outputs " + std::to_string(net.output_channels()));
  }

  CampaignRun run;
  run.config = config;
  const long first = config.first_end_step();
  for (long w = 0; w < config.windows; ++w) {
    const long end_step = first + w;
    WindowRecord rec = with_window_context(w, end_step, [&] {
      WindowRecord r;
      r.time_index = end_step;
      auto [win, actual] = window(data, end_step, config.window_length, config.target_offset);
      r.actual = actual;

      const auto start_time = Clock::now();
      const NoiseRadii radii = noise_radii(win, config.noise);
      const Star input = Star::from_box(win.flattened(), radii.radii);
      const ReachResult reach = network_reach(reach_net, input, config.window_length);
      const Eigen::Index index = reach.output_index(config.output_channel - 1, reach.output_length - 1);
      Interval estimated = reach.output.bounds(index);
      r.runtime_seconds = std::chrono::duration<double>(Clock::now() - start_time).count();

      r.generators = input.generator_count();
      r.std_fallback_features = radii.std_fallback_features;
      const Eigen::MatrixXd clean = net.forward(win.values());
      r.prediction = clean(config.output_channel - 1, clean.cols() - 1);

      if (config.selfcheck_samples > 0) {
        for (const auto& x : input.sample_members(config.selfcheck_samples, config.seed + static_cast<std::uint64_t>(w))) {
          const Eigen::MatrixXd y = net.forward(unflatten(x, net.input_features(), config.window_length));
          const double value = y(config.output_channel - 1, y.cols() - 1);
          if (value < estimated.lower() - 2.0 * kLpTolerance ||
              value > estimated.upper() + 2.0 * kLpTolerance) {
            ++r.selfcheck_violations;
          }
        }
      }

      if (config.clamp_estimate) estimated = clamp_lower(estimated);
      const Interval allowable =
          allowable_bounds(actual, config.allow_mode, config.allow_width, config.clamp_zero);
      r.verdict = evaluate_step(end_step, estimated, allowable);
      return r;
    });
    run.selfcheck_violations += rec.selfcheck_violations;
    run.result.verdicts.push_back(rec.verdict);
    run.result.runtimes.push_back(rec.runtime_seconds);
    run.records.push_back(std::move(rec));
  }
  run.result.pr = percentage_robustness(run.result.verdicts);
  run.result.por = percentage_overlap_robustness(run.result.verdicts);
  double total = 0.0;
  for (double t : run.result.runtimes) total += t;
  run.avg_runtime_seconds = total / static_cast<double>(run.result.runtimes.size());
  return run;
}

CampaignRun run_campaign(const CampaignConfig& config) {
  if (config.model.empty()) throw InvalidArgument("config: no model file given");
  const Network net = load_network(config.model);
  const Dataset data = load_campaign_data(config);
  if (!config.reach_model.empty()) {
    return run_campaign(config, net, load_network(config.reach_model), data);
  }
  return run_campaign(config, net, data);
}

MonotonicityReport check_monotonicity(const CampaignRun& run) {
  MonotonicityReport report;
  std::vector<Interval> history;
  std::size_t passed = 0;
  for (const auto& rec : run.records) {
    history.push_back(rec.verdict.estimated);
    if (history.size() < run.config.mono_k) continue;
    auto v = monotonicity_check(history, run.config.mono_k, run.config.slope_tol, rec.time_index);
    if (v.pass) ++passed;
    report.verdicts.push_back(v);
  }
  if (report.verdicts.empty()) {
    throw InvalidArgument("monotonicity: campaign has " + std::to_string(run.records.size()) +
                          " windows, fewer than mono_k = " + std::to_string(run.config.mono_k));
  }
  report.pass_fraction =
      100.0 * static_cast<double>(passed) / static_cast<double>(report.verdicts.size());
  return report;
}

std::vector<SweepRow> run_sweep(const CampaignConfig& config, const Network& net, const Dataset& data) {
  if (config.epsilon_list.empty()) throw InvalidArgument("sweep: epsilon list is empty");
  std::vector<SweepRow> rows;
  for (double eps : config.epsilon_list) {
    CampaignConfig c = config;
    c.noise.epsilon_percent = eps;
    const CampaignRun run = run_campaign(c, net, data);
    SweepRow row;
    row.epsilon = eps;
    row.pr = run.result.pr;
    row.por = run.result.por;
    row.avg_runtime_seconds = run.avg_runtime_seconds;
    row.selfcheck_violations = run.selfcheck_violations;
    for (const auto& rec : run.records) row.widths.push_back(rec.verdict.estimated.width());
    rows.push_back(std::move(row));
  }
  return rows;
}

bool OracleCheckReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

OracleCheckReport run_oracle_check(const CampaignConfig& config, const Network& net,
                                   const Network& reach_net, const Dataset* data) {
  OracleCheckReport report;
  std::mt19937_64 rng(config.seed);

  {
    OracleCheck check{"lp_vs_vertex_enumeration", true, ""};
    std::uniform_int_distribution<int> gens(1, 4);
    std::uniform_int_distribution<int> rows(0, 8);
    double worst = 0.0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
      const Star s = random_star(rng, 3, gens(rng), rows(rng));
      const auto lp = s.all_bounds();
      const auto exact = oracle::vertex_enum_bounds(s);
      for (std::size_t i = 0; i < lp.size(); ++i) {
        worst = std::max({worst, std::abs(lp[i].lower() - exact[i].lower()),
                          std::abs(lp[i].upper() - exact[i].upper())});
        if (lp[i].lower() > exact[i].lower() || lp[i].upper() < exact[i].upper()) check.passed = false;
      }
    }
    if (worst > 1e-7) check.passed = false;
    check.detail = std::to_string(trials) + " random stars, max deviation " + sci(worst);
    report.checks.push_back(check);
  }

  {
    Eigen::Index length = std::max<Eigen::Index>(config.window_length, reach_net.min_input_length());
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < reach_net.layers().size(); ++i) {
      const Layer& layer = reach_net.layers()[i];
      const auto* conv = std::get_if<Conv1DLayer>(&layer);
      if (!conv) continue;
      OracleCheck check{"conv_as_matrix_layer_" + std::to_string(i), true, ""};
      const oracle::AffineMatrix m = oracle::conv_as_matrix(*conv, length);
      const Eigen::Index n = conv->channels * length;
      Eigen::VectorXd center(n);
      Eigen::VectorXd radii(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        center[k] = normal(rng);
        radii[k] = (k % 3 == 0) ? std::abs(normal(rng)) : 0.0;
      }
      const Star s = Star::from_box(center, radii);
      const auto direct = conv1d_reach(*conv, s, length).all_bounds();
      const auto via_matrix = s.affine_map(m.matrix, m.bias).all_bounds();
      double bound_gap = 0.0;
      for (std::size_t d = 0; d < direct.size(); ++d) {
        bound_gap = std::max({bound_gap, std::abs(direct[d].lower() - via_matrix[d].lower()),
                              std::abs(direct[d].upper() - via_matrix[d].upper())});
      }
      double forward_gap = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXd x(conv->channels, length);
        for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = normal(rng);
        const Eigen::VectorXd y = flatten(apply_layer(layer, x));
        const Eigen::VectorXd y_matrix = m.matrix * flatten(x) + m.bias;
        forward_gap = std::max(forward_gap, (y - y_matrix).cwiseAbs().maxCoeff() /
                                                std::max(1.0, y.cwiseAbs().maxCoeff()));
      }
      check.passed = bound_gap <= 2.0 * kLpTolerance && forward_gap <= 1e-12;
      check.detail = "bound gap " + sci(bound_gap) + ", forward gap " + sci(forward_gap);
      report.checks.push_back(check);
      length = conv->output_length(length);
    }
  }

  {
    OracleCheck check{"sampled_soundness", true, ""};
    std::vector<std::pair<SeriesWindow, long>> windows;
    if (data) {
      const long count = std::min<long>(config.windows, 3);
      for (long w = 0; w < count; ++w) {
        const long end = config.first_end_step() + w;
        windows.emplace_back(window(*data, end, config.window_length, TargetOffset::kSameStep).first, end);
      }
    } else {
      std::uniform_real_distribution<double> unit(0.5, 1.5);
      const Eigen::Index length = std::max<Eigen::Index>(config.window_length, net.min_input_length());
      Eigen::MatrixXd x(net.input_features(), length);
      for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = unit(rng);
      windows.emplace_back(SeriesWindow(x), length);
    }
    NoiseSpec noise;
    noise.kind = NoiseKind::kMFAI;
    noise.epsilon_percent = config.noise.epsilon_percent > 0.0 ? config.noise.epsilon_percent : 5.0;
    noise.reference = config.noise.reference;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double max_slack = 0.0;
    for (const auto& [win, end] : windows) {
      const Star input = make_noise_star(win, noise);
      const auto r = oracle::sampled_soundness(net, reach_net, input, win.length(),
                                               config.oracle_samples, config.seed);
      samples += r.samples;
      violations += r.violations;
      max_slack = std::max(max_slack, r.max_slack);
    }
    check.passed = violations == 0;
    std::ostringstream eps;
    eps << noise.epsilon_percent;
    check.detail = "MFAI " + eps.str() + "%, " + std::to_string(samples) + " samples, " + std::to_string(violations) +
                   " violations, max slack " + sci(max_slack);
    report.checks.push_back(check);
  }
  return report;
}

Network fixture_network() {
  // conv1d 3 -> 8 (width 3, causal padding), relu, fc 8 -> 1.
  Conv1DLayer conv = Conv1DLayer::zeros(8, 3, 3);
  conv.pad_left = 2;
  for (Eigen::Index f = 0; f < 8; ++f) {
    for (Eigen::Index c = 0; c < 3; ++c) {
      for (Eigen::Index k = 0; k < 3; ++k) {
        conv.weight(f, c, k) = 0.05 * static_cast<double>((f * 7 + c * 3 + k * 5) % 11 - 5);
      }
    }
    conv.bias[f] = 0.1 * static_cast<double>(f % 4) - 0.15;
  }
  FullyConnectedLayer fc;
  fc.weights.resize(1, 8);
  for (Eigen::Index f = 0; f < 8; ++f) fc.weights(0, f) = 0.125 * static_cast<double>((f * 5) % 7 - 2);
  fc.bias = Eigen::VectorXd::Constant(1, 0.5);
  return Network(3, {conv, ReluLayer{}, fc});
}

// -- serialization --------------------------------------------------------------

std::string bounds_csv(const CampaignRun& run, bool include_timing) {
  std::ostringstream out;
  out.precision(17);
  out << "time_index,actual,est_lower,est_upper,allow_lower,allow_upper,rv,po";
  if (include_timing) out << ",runtime_seconds";
  out << "\n";
  for (const auto& r : run.records) {
    const auto& v = r.verdict;
    out << r.time_index << ',' << r.actual << ',' << v.estimated.lower() << ',' << v.estimated.upper()
        << ',' << v.allowable.lower() << ',' << v.allowable.upper() << ',' << (v.robust ? 1 : 0) << ','
        << v.overlap;
    if (include_timing) out << ',' << r.runtime_seconds;
    out << "\n";
  }
  return out.str();
}

std::string verify_json(const CampaignRun& run, bool include_timing) {
  json j;
  j["report_version"] = kReportVersion;
  j["tool_version"] = kToolVersion;
  j["seed"] = run.config.seed;
  j["config"] = config_json(run.config);
  j["pr"] = run.result.pr;
  j["por"] = run.result.por;
  if (include_timing) j["avg_runtime_seconds"] = run.avg_runtime_seconds;
  json verdicts = json::array();
  json fallbacks = json::array();
  for (const auto& r : run.records) {
    json v;
    v["time_index"] = r.time_index;
    v["actual"] = r.actual;
    v["prediction"] = r.prediction;
    interval_pair("est_lower", "est_upper", r.verdict.estimated, v);
    interval_pair("allow_lower", "allow_upper", r.verdict.allowable, v);
    v["rv"] = r.verdict.robust ? 1 : 0;
    v["po"] = r.verdict.overlap;
    v["generators"] = r.generators;
    if (include_timing) v["runtime_seconds"] = r.runtime_seconds;
    verdicts.push_back(std::move(v));
    if (!r.std_fallback_features.empty()) {
      json f;
      f["time_index"] = r.time_index;
      json features = json::array();
      for (auto idx : r.std_fallback_features) features.push_back(idx + 1);
      f["features"] = std::move(features);
      fallbacks.push_back(std::move(f));
    }
  }
  j["verdicts"] = std::move(verdicts);
  j["noise_std_fallbacks"] = std::move(fallbacks);
  j["selfcheck"] = {{"samples_per_window", run.config.selfcheck_samples},
                    {"violations", run.selfcheck_violations}};
  return j.dump(2) + "\n";
}

std::string monotonicity_json(const CampaignRun& run, const MonotonicityReport& report) {
  json j;
  j["report_version"] = kReportVersion;
  j["tool_version"] = kToolVersion;
  j["seed"] = run.config.seed;
  j["config"] = config_json(run.config);
  j["window"] = run.config.mono_k;
  j["slope_tol"] = run.config.slope_tol;
  j["pass_fraction"] = report.pass_fraction;
  json verdicts = json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"time_index", v.time_index},
                        {"slope_lower", v.slope_lower},
                        {"slope_upper", v.slope_upper},
                        {"pass", v.pass ? 1 : 0}});
  }
  j["verdicts"] = std::move(verdicts);
  return j.dump(2) + "\n";
}

std::string sweep_json(const CampaignConfig& config, const std::vector<SweepRow>& rows,
                       bool include_timing) {
  json j;
  j["report_version"] = kReportVersion;
  j["tool_version"] = kToolVersion;
  j["seed"] = config.seed;
  j["config"] = config_json(config);
  json entries = json::array();
  for (const auto& r : rows) {
    json e;
    e["epsilon"] = r.epsilon;
    e["pr"] = r.pr;
    e["por"] = r.por;
    if (include_timing) e["avg_runtime_seconds"] = r.avg_runtime_seconds;
    e["widths"] = r.widths;
    e["selfcheck_violations"] = r.selfcheck_violations;
    entries.push_back(std::move(e));
  }
  j["sweep"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool include_timing) {
  std::ostringstream out;
  out.precision(17);
  out << "epsilon,pr,por,mean_width,max_width";
  if (include_timing) out << ",avg_runtime_seconds";
  out << "\n";
  for (const auto& r : rows) {
    double sum = 0.0;
    double max = 0.0;
    for (double w : r.widths) {
      sum += w;
      max = std::max(max, w);
    }
    out << r.epsilon << ',' << r.pr << ',' << r.por << ','
        << (r.widths.empty() ? 0.0 : sum / static_cast<double>(r.widths.size())) << ',' << max;
    if (include_timing) out << ',' << r.avg_runtime_seconds;
    out << "\n";
  }
  return out.str();
}

std::string oracle_check_json(const CampaignConfig& config, const OracleCheckReport& report) {
  json j;
  j["report_version"] = kReportVersion;
  j["tool_version"] = kToolVersion;
  j["seed"] = config.seed;
  j["passed"] = report.passed();
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

}  // namespace tsreach
