#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "tsreach/campaign.hpp"
#include "tsreach/errors.hpp"
#include "tsreach/model_io.hpp"

namespace tsreach {
namespace {

const std::filesystem::path kData = TSREACH_TEST_DATA_DIR;

TEST(ParseNetwork, MinimalDenseLayer) {
  const Network net = parse_network(R"({"format_version": 1, "input_features": 2,
    "layers": [{"kind": "fc", "weights": [[1.0, -2.0]], "bias": [0.5]}]})");
  EXPECT_EQ(net.layers().size(), 1u);
  EXPECT_EQ(net.output_channels(), 1);
}

TEST(ParseNetwork, ConvChannelMismatchNamesLayer) {
  try {
    parse_network(R"({"input_features": 2, "layers": [
      {"kind": "conv1d", "weights": [[[1], [1]], [[1], [1]], [[1], [1]]], "bias": [0, 0, 0]},
      {"kind": "relu"},
      {"kind": "conv1d", "weights": [[[1], [1]]], "bias": [0]}]})");
    FAIL() << "expected a shape error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("layer 2"), std::string::npos) << e.what();
  }
}

TEST(ParseNetwork, RejectsUnknownKindAndBadJson) {
  EXPECT_THROW(parse_network(R"({"input_features": 1, "layers": [{"kind": "lstm"}]})"), ParseError);
  EXPECT_THROW(parse_network("{"), ParseError);
  EXPECT_THROW(parse_network(R"({"format_version": 9, "input_features": 1, "layers": []})"), ParseError);
}

TEST(SerializeNetwork, RoundTrip) {
  const Network net = fixture_network();
  const Network back = parse_network(serialize_network(net));
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 7);
  EXPECT_EQ(net.forward(x), back.forward(x));
  EXPECT_EQ(serialize_network(back), serialize_network(net));
}

TEST(ShippedFixture, MatchesBuiltInNetwork) {
  const Network file = load_network(kData / "fixture_net.json");
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 12);
  EXPECT_LE((file.forward(x) - fixture_network().forward(x)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ParseSeries, SelectsColumns) {
  const Dataset ds = parse_series("a,b,y\n1,2,3\n4,5,6\n", {"a", "b"}, "y");
  EXPECT_EQ(ds.features.rows(), 2);
  EXPECT_EQ(ds.length(), 2);
  EXPECT_EQ(ds.features(1, 1), 5.0);
  EXPECT_EQ(ds.target[0], 3.0);
}

TEST(ParseSeries, MissingColumnNamed) {
  try {
    parse_series("a,y\n1,2\n", {"a", "b"}, "y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos) << e.what();
  }
}

TEST(ParseSeries, BadNumberReportsLine) {
  try {
    parse_series("a,y\n1,2\nx,3\n", {"a"}, "y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(SaveSeries, RoundTripIsExact) {
  const Dataset ds = parse_series("a,y\n0.1,0.30000000000000004\n1e-300,2\n", {"a"}, "y");
  const auto path = std::filesystem::temp_directory_path() / "tsreach_roundtrip.csv";
  save_series(ds, path);
  const Dataset back = load_series(path, {"a"}, "y");
  EXPECT_EQ(back.features, ds.features);
  EXPECT_EQ(back.target, ds.target);
  std::filesystem::remove(path);
}

Dataset ramp(long length) {
  Dataset ds;
  ds.feature_names = {"x"};
  ds.target_name = "y";
  ds.features.resize(1, length);
  ds.target.resize(length);
  for (long t = 0; t < length; ++t) {
    ds.features(0, t) = static_cast<double>(t + 1);
    ds.target[t] = 100.0 + t + 1;
  }
  return ds;
}

TEST(Window, FirstFullWindow) {
  const auto [w, y] = window(ramp(100), 30, 30, TargetOffset::kSameStep);
  EXPECT_EQ(w.length(), 30);
  EXPECT_EQ(w.values()(0, 0), 1.0);
  EXPECT_EQ(w.values()(0, 29), 30.0);
  EXPECT_EQ(y, 130.0);
  EXPECT_EQ(window(ramp(100), 30, 30, TargetOffset::kNextStep).second, 131.0);
}

TEST(Window, OutOfRange) {
  EXPECT_THROW(window(ramp(100), 29, 30, TargetOffset::kSameStep), InvalidArgument);
  EXPECT_THROW(window(ramp(100), 101, 30, TargetOffset::kSameStep), InvalidArgument);
  EXPECT_THROW(window(ramp(100), 100, 30, TargetOffset::kNextStep), InvalidArgument);
}

TEST(ZScore, ShiftedFeatureHasZeroMean) {
  Dataset ds = ramp(10);
  ds.features.array() += 1000.0;
  const Dataset z = zscore(ds);
  EXPECT_NEAR(z.features.row(0).mean(), 0.0, 1e-12);
  const Dataset back = denormalize(z);
  EXPECT_LE((back.features - ds.features).cwiseAbs().maxCoeff(), 1e-9);
}

Eigen::MatrixXd trajectory(std::initializer_list<double> values) {
  Eigen::MatrixXd m(1, static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m(0, i++) = v;
  return m;
}

TEST(Prognosability, IdenticalEndsScoreOne) {
  const auto y = prognosability({trajectory({5, 3, 1}), trajectory({9, 4, 1})});
  EXPECT_DOUBLE_EQ(y[0], 1.0);
}

TEST(Prognosability, ConstantUnitsAreNaNAndDropped) {
  const std::vector<Eigen::MatrixXd> units = {trajectory({2, 2, 2}), trajectory({2, 2})};
  EXPECT_TRUE(std::isnan(prognosability(units)[0]));
  const ScreeningResult s = screen_features(units);
  EXPECT_TRUE(s.kept.empty());
  ASSERT_EQ(s.dropped.size(), 1u);
}

TEST(Prognosability, HandComputedPopulationStd) {
  // ends {10, 12}: population std 1; changes {4, 4}: mean 4.
  const auto y = prognosability({trajectory({6, 8, 10}), trajectory({16, 14, 12})});
  EXPECT_NEAR(y[0], 1.2840254166877414, 1e-15);
}

TEST(Turbofan, ReducedColumns) {
  const auto& cols = turbofan_reduced_columns();
  EXPECT_EQ(cols.size(), 17u);
  EXPECT_EQ(cols.front(), 3);
  EXPECT_EQ(cols.back(), 26);
  EXPECT_EQ(turbofan_column_names().size(), 26u);
}

}  // namespace
}  // namespace tsreach
