#ifndef TSREACH_ORACLE_HPP
#define TSREACH_ORACLE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tsreach/layers.hpp"
#include "tsreach/star.hpp"

namespace tsreach::oracle {

// Brute-force references that certify the reachability code. None of them
// goes through the simplex solver.

inline constexpr Eigen::Index kMaxEnumGenerators = 6;
inline constexpr Eigen::Index kMaxEnumConstraints = 40;
inline constexpr std::size_t kDefaultSamples = 10000;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Vertices of {a : C a <= d, lo <= a <= hi} by enumerating every m-subset
/// of the p + 2m constraints (rank tolerance 1e-10), deduplicated.
std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& c, const Eigen::VectorXd& d,
                                                const Eigen::VectorXd& lower,
                                                const Eigen::VectorXd& upper);

/// Exact per-coordinate extrema of a star through its predicate vertices.
/// Requires m <= 6 and p + 2m <= 40; throws InvalidArgument otherwise and
/// EmptySetError when there are no vertices.
std::vector<Interval> vertex_enum_bounds(const Star& star);

/// True iff the predicate has at least one vertex (same caps).
bool vertex_enum_feasible(const Star& star);

/// Explicit (filters * T') x (channels * T) matrix and bias with
/// flatten(conv(x)) = M flatten(x) + b.
struct AffineMatrix {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd bias;
};
AffineMatrix conv_as_matrix(const Conv1DLayer& layer, Eigen::Index input_length);

/// Time-shared dense layer as one matrix on the feature-major flattening.
AffineMatrix fc_as_matrix(const FullyConnectedLayer& layer, Eigen::Index input_length);

/// Composition of every layer of a ReLU-free network. Throws
/// InvalidArgument if the network has a ReLU.
AffineMatrix network_as_matrix(const Network& net, Eigen::Index input_length);

/// Exact interval image of a box {center +- radii} under an affine map.
std::vector<Interval> box_image(const AffineMatrix& map, const Eigen::VectorXd& center,
                                const Eigen::VectorXd& radii);

struct SoundnessReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // largest amount a sample left its bound by
  std::vector<Interval> bounds;
  Eigen::VectorXd sampled_min;
  Eigen::VectorXd sampled_max;
  /// Gap between computed bounds and sampled extremes, per output dim (the
  /// larger of the two sides). Zero would mean perfectly tight.
  Eigen::VectorXd slack;
  double max_slack = 0.0;
};

/// Samples `count` members of `input`, runs `forward_net` on each and
/// checks every output against the reachable bounds of `reach_net`
/// (normally the same network) with tolerance 2 * kLpTolerance.
SoundnessReport sampled_soundness(const Network& forward_net, const Network& reach_net,
                                  const Star& input, Eigen::Index input_length,
                                  std::size_t count = kDefaultSamples,
                                  std::uint64_t seed = kDefaultSeed);

inline SoundnessReport sampled_soundness(const Network& net, const Star& input,
                                         Eigen::Index input_length,
                                         std::size_t count = kDefaultSamples,
                                         std::uint64_t seed = kDefaultSeed) {
  return sampled_soundness(net, net, input, input_length, count, seed);
}

}  // namespace tsreach::oracle

#endif  // TSREACH_ORACLE_HPP
