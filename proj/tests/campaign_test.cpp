#include <filesystem>

#include <gtest/gtest.h>

#include "tsreach/campaign.hpp"
#include "tsreach/errors.hpp"

namespace tsreach {
namespace {

const std::filesystem::path kData = TSREACH_TEST_DATA_DIR;

Network identity_net() {
  return Network(1, {FullyConnectedLayer{Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1)}});
}

Dataset series(const std::vector<double>& x, const std::vector<double>& y) {
  Dataset ds;
  ds.feature_names = {"x"};
  ds.target_name = "y";
  ds.features = Eigen::Map<const Eigen::RowVectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  ds.target = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  return ds;
}

CampaignConfig small_config() {
  CampaignConfig c;
  c.window_length = 3;
  c.windows = 5;
  c.noise.kind = NoiseKind::kSFSI;
  c.noise.feature = 1;
  c.noise.epsilon_percent = 10.0;
  c.allow_mode = AllowableMode::kAbsoluteOffset;
  c.allow_width = 1.5;
  c.selfcheck_samples = 50;
  return c;
}

CampaignConfig fixture_config() {
  CampaignConfig c;
  c.model = (kData / "fixture_net.json").string();
  c.data = (kData / "synthetic.csv").string();
  c.features = {"voltage", "current", "temperature"};
  c.target = "soc";
  c.windows = 20;
  c.noise.kind = NoiseKind::kSFSI;
  c.noise.feature = 1;
  c.noise.epsilon_percent = 1.0;
  c.selfcheck_samples = 20;
  return c;
}

TEST(Campaign, ThreeOfFiveRobust) {
  // Noise radius 1 around a constant 10; allowable is actual +- 1.5.
  const Dataset ds = series({10, 10, 10, 10, 10, 10, 10}, {0, 0, 10, 10, 13, 10, 20});
  const CampaignRun run = run_campaign(small_config(), identity_net(), ds);
  ASSERT_EQ(run.records.size(), 5u);
  EXPECT_DOUBLE_EQ(run.result.pr, 60.0);
  EXPECT_DOUBLE_EQ(run.result.por, 60.0);
  EXPECT_NEAR(run.records[0].verdict.estimated.lower(), 9.0, 2e-9);
  EXPECT_NEAR(run.records[0].verdict.estimated.upper(), 11.0, 2e-9);
  EXPECT_EQ(run.records[2].time_index, 5);
  EXPECT_FALSE(run.records[2].verdict.robust);
  EXPECT_EQ(run.selfcheck_violations, 0u);
}

TEST(Campaign, HugeAllowableWidthIsFullyRobust) {
  CampaignConfig c = fixture_config();
  c.allow_mode = AllowableMode::kAbsoluteOffset;
  c.allow_width = 1e6;
  const CampaignRun run = run_campaign(c);
  EXPECT_EQ(run.result.pr, 100.0);
  EXPECT_EQ(run.result.por, 100.0);
}

TEST(Campaign, ZeroNoiseCollapsesToPrediction) {
  CampaignConfig c = fixture_config();
  c.noise.epsilon_percent = 0.0;
  const CampaignRun run = run_campaign(c);
  for (const auto& r : run.records) {
    EXPECT_NEAR(r.verdict.estimated.lower(), r.prediction, 2e-9);
    EXPECT_NEAR(r.verdict.estimated.upper(), r.prediction, 2e-9);
    const bool inside = r.verdict.allowable.contains(r.prediction);
    EXPECT_EQ(r.verdict.robust, inside);
    EXPECT_EQ(r.verdict.overlap, inside ? 1.0 : 0.0);
  }
}

TEST(Campaign, WindowPastTheEndNamesIndex) {
  CampaignConfig c = small_config();
  c.windows = 10;
  const Dataset ds = series({1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6});
  try {
    run_campaign(c, identity_net(), ds);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("window 4"), std::string::npos) << e.what();
  }
}

TEST(Campaign, WrongReachNetworkTripsSelfCheck) {
  const Dataset ds = series({10, 10, 10, 10, 10, 10, 10}, {0, 0, 10, 10, 13, 10, 20});
  const Network shifted(1, {FullyConnectedLayer{Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, 5.0)}});
  const CampaignRun run = run_campaign(small_config(), identity_net(), shifted, ds);
  EXPECT_GT(run.selfcheck_violations, 0u);
}

TEST(Campaign, IdenticalRunsSerializeIdentically) {
  const CampaignConfig c = fixture_config();
  const CampaignRun a = run_campaign(c);
  const CampaignRun b = run_campaign(c);
  EXPECT_EQ(verify_json(a, false), verify_json(b, false));
  EXPECT_EQ(bounds_csv(a, false), bounds_csv(b, false));
  EXPECT_EQ(bounds_csv(a, false).substr(0, 64),
            "time_index,actual,est_lower,est_upper,allow_lower,allow_upper,rv");
}

TEST(Campaign, PrNeverExceedsPor) {
  const CampaignRun run = run_campaign(fixture_config());
  EXPECT_LE(run.result.pr, run.result.por);
}

TEST(Config, JsonRoundTrip) {
  CampaignConfig c = fixture_config();
  c.noise.time_step = 7;
  c.epsilon_list = {1, 2.5};
  c.target_offset = TargetOffset::kNextStep;
  c.clamp_zero = true;
  c.seed = 99;
  const std::string text = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(text)), text);
  EXPECT_EQ(config_from_json(text).noise.time_step, 7);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(config_from_json(R"({"allow_mode": "sideways"})"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"windows": "many"})"), ParseError);
  CampaignConfig c;
  c.windows = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Monotonicity, DecreasingAndReversedCampaigns) {
  std::vector<double> x(20);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 100.0 - 3.0 * static_cast<double>(i);
  CampaignConfig c = small_config();
  c.windows = 15;
  c.mono_k = 5;
  const auto down = check_monotonicity(run_campaign(c, identity_net(), series(x, x)));
  EXPECT_EQ(down.pass_fraction, 100.0);
  EXPECT_EQ(down.verdicts.size(), 11u);
  std::reverse(x.begin(), x.end());
  const auto up = check_monotonicity(run_campaign(c, identity_net(), series(x, x)));
  EXPECT_EQ(up.pass_fraction, 0.0);
}

TEST(Sweep, OverlapShrinksWithNoise) {
  CampaignConfig c = fixture_config();
  c.noise.kind = NoiseKind::kMFSI;
  c.noise.feature.reset();
  c.epsilon_list = {1, 2.5, 5, 10};
  const auto rows = run_sweep(c, load_network(c.model), load_campaign_data(c));
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].por, rows[i - 1].por);
    for (std::size_t w = 0; w < rows[i].widths.size(); ++w) EXPECT_GE(rows[i].widths[w], rows[i - 1].widths[w]);
  }
}

TEST(OracleCheck, FixtureNetworkPasses) {
  CampaignConfig c;
  c.window_length = 10;
  c.noise.kind = NoiseKind::kMFAI;
  c.noise.epsilon_percent = 5.0;
  c.oracle_samples = 500;
  const Network net = fixture_network();
  const auto report = run_oracle_check(c, net, net, nullptr);
  for (const auto& check : report.checks) EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  EXPECT_TRUE(report.passed());
}

}  // namespace
}  // namespace tsreach
