#ifndef TSREACH_LAYERS_HPP
#define TSREACH_LAYERS_HPP

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tsreach/star.hpp"

namespace tsreach {

/// Dense layer applied independently at every time step (weights shared
/// across time): out[:, t] = W in[:, t] + b.
struct FullyConnectedLayer {
  Eigen::MatrixXd weights;  // outputs x inputs
  Eigen::VectorXd bias;     // outputs

  Eigen::Index inputs() const { return weights.cols(); }
  Eigen::Index outputs() const { return weights.rows(); }
};

/// 1-D convolution over time with zero padding.
///
/// out[f, t] = bias[f] + sum_{c, k} weight(f, c, k) * in[c, t * stride + k * dilation - pad_left]
/// where out-of-range input positions read as zero.
struct Conv1DLayer {
  Eigen::Index filters = 0;
  Eigen::Index channels = 0;
  Eigen::Index width = 0;
  /// filters x (channels * width); column c * width + k holds tap k of channel c.
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  Eigen::Index stride = 1;
  Eigen::Index pad_left = 0;
  Eigen::Index pad_right = 0;
  Eigen::Index dilation = 1;

  double weight(Eigen::Index f, Eigen::Index c, Eigen::Index k) const {
    return weights(f, c * width + k);
  }
  double& weight(Eigen::Index f, Eigen::Index c, Eigen::Index k) {
    return weights(f, c * width + k);
  }

  /// floor((T + P_l + P_r - D (w - 1) - 1) / S) + 1, or a value < 1 when the
  /// input is too short.
  Eigen::Index output_length(Eigen::Index input_length) const;

  /// Smallest input length giving `output_length` output steps.
  Eigen::Index required_input_length(Eigen::Index output_length) const;

  /// Zero-initialized layer with the given geometry.
  static Conv1DLayer zeros(Eigen::Index filters, Eigen::Index channels, Eigen::Index width);
};

struct ReluLayer {};

using Layer = std::variant<FullyConnectedLayer, Conv1DLayer, ReluLayer>;

std::string layer_kind(const Layer& layer);

/// Time-series regression network: an ordered stack of layers mapping an
/// input_features x t_s window to an output_channels x T' matrix.
class Network {
 public:
  /// Validates per-layer parameters and channel compatibility. Errors name
  /// the offending layer index.
  Network(Eigen::Index input_features, std::vector<Layer> layers);

  Eigen::Index input_features() const { return input_features_; }
  const std::vector<Layer>& layers() const { return layers_; }
  Eigen::Index output_channels() const;

  /// Channel count entering layer `index`.
  Eigen::Index channels_before(std::size_t index) const;

  /// Output time length; throws InputTooShortError below the receptive field.
  Eigen::Index output_length(Eigen::Index input_length) const;

  /// Minimum input length producing at least one output step.
  Eigen::Index min_input_length() const;

  /// Concrete inference on an input_features x t_s matrix.
  Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;

 private:
  Eigen::Index input_features_;
  std::vector<Layer> layers_;
};

/// Concrete single-layer evaluation on a channels x time matrix.
Eigen::MatrixXd apply_layer(const Layer& layer, const Eigen::MatrixXd& input);

/// Exact star image of a time-shared dense layer; the star state is the
/// inputs x t_s window flattened feature-major. Predicate unchanged.
Star fc_reach(const FullyConnectedLayer& layer, const Star& input);

/// Exact star image of a 1-D convolution: the center is convolved with the
/// bias, each generator without it. Predicate unchanged.
Star conv1d_reach(const Conv1DLayer& layer, const Star& input, Eigen::Index input_length);

/// Sound over-approximation of elementwise ReLU (triangle relaxation with
/// one fresh coefficient per unstable coordinate).
Star relu_reach_approx(const Star& input);

struct LayerStats {
  std::string kind;
  Eigen::Index generators = 0;
  Eigen::Index constraints = 0;
  Eigen::Index channels = 0;
  Eigen::Index length = 0;
  Eigen::Index unstable_neurons = 0;
  double seconds = 0.0;
};

struct ReachResult {
  Star output;
  Eigen::Index output_channels = 0;
  Eigen::Index output_length = 0;
  std::vector<LayerStats> layers;

  /// State index of (channel, time) in the flattened output.
  Eigen::Index output_index(Eigen::Index channel, Eigen::Index time) const {
    return channel * output_length + time;
  }
};

/// Layer-by-layer reachable set of `net` on an input star over an
/// input_features x input_length window.
ReachResult network_reach(const Network& net, const Star& input, Eigen::Index input_length);

/// Row-major (feature-major) flattening of a channels x time matrix.
Eigen::VectorXd flatten(const Eigen::MatrixXd& values);

/// Inverse of flatten.
Eigen::MatrixXd unflatten(const Eigen::VectorXd& state, Eigen::Index channels, Eigen::Index length);

}  // namespace tsreach

#endif  // TSREACH_LAYERS_HPP
