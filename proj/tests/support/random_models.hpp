#ifndef TSREACH_TESTS_RANDOM_MODELS_HPP
#define TSREACH_TESTS_RANDOM_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tsreach/layers.hpp"
#include "tsreach/series.hpp"
#include "tsreach/star.hpp"

namespace tsreach::testing {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                                     double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  return random_matrix(rng, n, 1, scale);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random conv layer whose output keeps at least one step for `input_length`.
inline Conv1DLayer random_conv(std::mt19937_64& rng, Eigen::Index channels, Eigen::Index filters,
                               Eigen::Index input_length) {
  for (;;) {
    Conv1DLayer conv = Conv1DLayer::zeros(filters, channels, uniform_int(rng, 1, 3));
    conv.stride = uniform_int(rng, 1, 2);
    conv.dilation = uniform_int(rng, 1, 3);
    conv.pad_left = uniform_int(rng, 0, 2);
    conv.pad_right = uniform_int(rng, 0, 2);
    if (conv.output_length(input_length) < 1) continue;
    const double scale = 1.0 / std::sqrt(static_cast<double>(channels * conv.width));
    conv.weights = random_matrix(rng, filters, channels * conv.width, scale);
    conv.bias = random_vector(rng, filters, 0.1);
    return conv;
  }
}

inline FullyConnectedLayer random_fc(std::mt19937_64& rng, Eigen::Index inputs, Eigen::Index outputs) {
  FullyConnectedLayer fc;
  fc.weights = random_matrix(rng, outputs, inputs, 1.0 / std::sqrt(static_cast<double>(inputs)));
  fc.bias = random_vector(rng, outputs, 0.1);
  return fc;
}

struct RandomNetSpec {
  int max_channels = 8;
  bool with_relu = true;
};

/// 1-3 conv layers then 1-2 dense layers, ReLU between hidden layers.
inline Network random_network(std::mt19937_64& rng, Eigen::Index features, Eigen::Index input_length,
                              const RandomNetSpec& spec = {}) {
  std::vector<Layer> layers;
  Eigen::Index channels = features;
  Eigen::Index length = input_length;
  const int convs = uniform_int(rng, 1, 3);
  for (int i = 0; i < convs; ++i) {
    const Eigen::Index filters = uniform_int(rng, 1, spec.max_channels);
    Conv1DLayer conv = random_conv(rng, channels, filters, length);
    length = conv.output_length(length);
    channels = filters;
    layers.emplace_back(std::move(conv));
    if (spec.with_relu) layers.emplace_back(ReluLayer{});
  }
  const int fcs = uniform_int(rng, 1, 2);
  for (int i = 0; i < fcs; ++i) {
    const Eigen::Index outputs = (i + 1 == fcs) ? uniform_int(rng, 1, 2) : uniform_int(rng, 1, spec.max_channels);
    layers.emplace_back(random_fc(rng, channels, outputs));
    channels = outputs;
    if (spec.with_relu && i + 1 < fcs) layers.emplace_back(ReluLayer{});
  }
  return Network(features, std::move(layers));
}

/// Window with entries in [0.5, 2] so every feature mean is well away from 0.
inline SeriesWindow random_window(std::mt19937_64& rng, Eigen::Index features, Eigen::Index length) {
  std::uniform_real_distribution<double> unit(0.5, 2.0);
  Eigen::MatrixXd x(features, length);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = unit(rng);
  return SeriesWindow(x);
}

/// Feasible star in R^n with m generators and p random halfspaces that all
/// hold strictly at an interior point of the unit box.
inline Star random_star(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m, Eigen::Index p) {
  std::uniform_real_distribution<double> inner(-0.5, 0.5);
  std::uniform_real_distribution<double> slack(0.05, 1.0);
  Eigen::VectorXd alpha(m);
  for (Eigen::Index j = 0; j < m; ++j) alpha[j] = inner(rng);
  const Eigen::MatrixXd c = random_matrix(rng, p, m);
  Eigen::VectorXd d(p);
  for (Eigen::Index i = 0; i < p; ++i) d[i] = c.row(i).dot(alpha) + slack(rng);
  return Star(random_vector(rng, n), random_matrix(rng, n, m), c, d, Eigen::VectorXd::Constant(m, -1.0),
              Eigen::VectorXd::Constant(m, 1.0));
}

}  // namespace tsreach::testing

#endif  // TSREACH_TESTS_RANDOM_MODELS_HPP
