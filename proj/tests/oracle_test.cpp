#include <random>

#include <gtest/gtest.h>

#include "support/random_models.hpp"
#include "tsreach/errors.hpp"
#include "tsreach/oracle.hpp"

namespace tsreach {
namespace {

TEST(VertexEnumeration, UnitSquare) {
  const auto v = oracle::enumerate_vertices(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0),
                                            Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1));
  EXPECT_EQ(v.size(), 4u);
  const auto b = oracle::vertex_enum_bounds(Star::from_box(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)));
  EXPECT_EQ(b[0], Interval(-1, 1));
  EXPECT_EQ(b[1], Interval(-1, 1));
}

TEST(VertexEnumeration, Simplex) {
  const auto v = oracle::enumerate_vertices(Eigen::RowVector3d(1, 1, 1), Eigen::VectorXd::Ones(1),
                                            Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(5));
  EXPECT_EQ(v.size(), 4u);
}

TEST(VertexEnumeration, CapsEnforced) {
  const Star big = Star::from_box(Eigen::VectorXd::Zero(7), Eigen::VectorXd::Ones(7));
  EXPECT_THROW(oracle::vertex_enum_bounds(big), InvalidArgument);
}

TEST(ConvAsMatrix, IdentityKernel) {
  Conv1DLayer conv = Conv1DLayer::zeros(1, 1, 1);
  conv.weights(0, 0) = 1.0;
  const auto m = oracle::conv_as_matrix(conv, 5);
  EXPECT_EQ(m.matrix, Eigen::MatrixXd::Identity(5, 5));
  EXPECT_EQ(m.bias, Eigen::VectorXd::Zero(5));
}

TEST(ConvAsMatrix, DifferenceKernelIsBanded) {
  Conv1DLayer conv = Conv1DLayer::zeros(1, 1, 2);
  conv.weights << 1, -1;
  const auto m = oracle::conv_as_matrix(conv, 4);
  Eigen::MatrixXd expected(3, 4);
  expected << 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 1, -1;
  EXPECT_EQ(m.matrix, expected);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd x = testing::random_matrix(rng, 1, 4);
    EXPECT_LE((flatten(apply_layer(conv, x)) - m.matrix * flatten(x)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ConvAsMatrix, DilationOffsetsTheBand) {
  Conv1DLayer conv = Conv1DLayer::zeros(1, 1, 2);
  conv.weights << 1, 1;
  conv.dilation = 2;
  const auto m = oracle::conv_as_matrix(conv, 5);
  ASSERT_EQ(m.matrix.rows(), 3);
  EXPECT_EQ(m.matrix(0, 0), 1.0);
  EXPECT_EQ(m.matrix(0, 2), 1.0);
  EXPECT_EQ(m.matrix(0, 1), 0.0);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd x = testing::random_matrix(rng, 1, 5);
    EXPECT_LE((flatten(apply_layer(conv, x)) - m.matrix * flatten(x)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SampledSoundness, AffineNetworkIsTight) {
  std::mt19937_64 rng(8);
  const Network net = testing::random_network(rng, 2, 10, {.max_channels = 3, .with_relu = false});
  const Star input = Star::from_box(testing::random_vector(rng, 20), Eigen::VectorXd::Constant(20, 0.1));
  const auto r = oracle::sampled_soundness(net, input, 10, 2000, 1);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.samples, 2000u);
}

TEST(SampledSoundness, PointStarSlackIsTau) {
  const Network net(1, {FullyConnectedLayer{Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Zero(1)}});
  const auto r = oracle::sampled_soundness(net, Star::point(Eigen::Vector3d(1, 2, 3)), 3, 10, 1);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_LE(r.max_slack, 2.0 * kLpTolerance + 1e-15);
}

TEST(SampledSoundness, ReluNetworkHasSlackButNoViolations) {
  std::mt19937_64 rng(12);
  const Network net = testing::random_network(rng, 2, 10);
  const Star input = Star::from_box(testing::random_vector(rng, 20), Eigen::VectorXd::Constant(20, 0.5));
  const auto r = oracle::sampled_soundness(net, input, 10, 2000, 2);
  EXPECT_EQ(r.violations, 0u);
}

TEST(SampledSoundness, DetectsWrongReachNetwork) {
  const Network net(1, {FullyConnectedLayer{Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Zero(1)}});
  const Network wrong(1, {FullyConnectedLayer{Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::VectorXd::Zero(1)}});
  const Star input = Star::from_box(Eigen::Vector2d(1, 1), Eigen::Vector2d(0.5, 0.5));
  EXPECT_GT(oracle::sampled_soundness(net, wrong, input, 2, 100, 1).violations, 0u);
}

}  // namespace
}  // namespace tsreach
