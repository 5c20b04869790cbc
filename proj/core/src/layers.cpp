#include "tsreach/layers.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "tsreach/errors.hpp"

namespace tsreach {

namespace {

using Clock = std::chrono::steady_clock;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string at_layer(std::size_t index) { return "layer " + std::to_string(index) + ": "; }

// Linear part of a time-shared dense layer applied to stacked state rows
// (inputs * length rows, any number of columns).
Eigen::MatrixXd fc_rows(const FullyConnectedLayer& layer, const Eigen::MatrixXd& rows,
                        Eigen::Index length) {
  const Eigen::Index cols = rows.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(layer.outputs() * length, cols);
  for (Eigen::Index o = 0; o < layer.outputs(); ++o) {
    auto block = out.middleRows(o * length, length);
    for (Eigen::Index i = 0; i < layer.inputs(); ++i) {
      const double w = layer.weights(o, i);
      if (w != 0.0) block += w * rows.middleRows(i * length, length);
    }
  }
  return out;
}

// Linear part of a convolution applied to stacked state rows
// (channels * length rows).
Eigen::MatrixXd conv_rows(const Conv1DLayer& layer, const Eigen::MatrixXd& rows,
                          Eigen::Index length, Eigen::Index out_length) {
  const Eigen::Index cols = rows.cols();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(layer.filters * out_length, cols);
  for (Eigen::Index f = 0; f < layer.filters; ++f) {
    for (Eigen::Index t = 0; t < out_length; ++t) {
      auto target = out.row(f * out_length + t);
      for (Eigen::Index c = 0; c < layer.channels; ++c) {
        for (Eigen::Index k = 0; k < layer.width; ++k) {
          const Eigen::Index pos = t * layer.stride + k * layer.dilation - layer.pad_left;
          if (pos < 0 || pos >= length) continue;
          const double w = layer.weight(f, c, k);
          if (w != 0.0) target += w * rows.row(c * length + pos);
        }
      }
    }
  }
  return out;
}

void check_finite(const Eigen::MatrixXd& m, std::size_t index, const char* what) {
  if (!m.array().isFinite().all()) {
    throw InvalidArgument(at_layer(index) + what + " contain non-finite values");
  }
}

}  // namespace

Eigen::Index Conv1DLayer::output_length(Eigen::Index input_length) const {
  const Eigen::Index span = input_length + pad_left + pad_right - dilation * (width - 1) - 1;
  if (span < 0) return 0;
  return span / stride + 1;
}

Eigen::Index Conv1DLayer::required_input_length(Eigen::Index out_length) const {
  const Eigen::Index needed =
      (out_length - 1) * stride + dilation * (width - 1) + 1 - pad_left - pad_right;
  return std::max<Eigen::Index>(needed, 1);
}

Conv1DLayer Conv1DLayer::zeros(Eigen::Index filters, Eigen::Index channels, Eigen::Index width) {
  Conv1DLayer layer;
  layer.filters = filters;
  layer.channels = channels;
  layer.width = width;
  layer.weights = Eigen::MatrixXd::Zero(filters, channels * width);
  layer.bias = Eigen::VectorXd::Zero(filters);
  return layer;
}

std::string layer_kind(const Layer& layer) {
  return std::visit(Overloaded{[](const FullyConnectedLayer&) { return std::string("fc"); },
                               [](const Conv1DLayer&) { return std::string("conv1d"); },
                               [](const ReluLayer&) { return std::string("relu"); }},
                    layer);
}

Network::Network(Eigen::Index input_features, std::vector<Layer> layers)
    : input_features_(input_features), layers_(std::move(layers)) {
  if (input_features_ < 1) throw InvalidArgument("network: input_features must be >= 1");
  Eigen::Index channels = input_features_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    std::visit(
        Overloaded{
            [&](const FullyConnectedLayer& fc) {
              if (fc.weights.size() == 0) throw InvalidArgument(at_layer(i) + "fc has no weights");
              if (fc.bias.size() != fc.outputs()) {
                throw InvalidArgument(at_layer(i) + "fc bias length " +
                                      std::to_string(fc.bias.size()) + " != outputs " +
                                      std::to_string(fc.outputs()));
              }
              if (fc.inputs() != channels) {
                throw InvalidArgument(at_layer(i) + "fc expects " + std::to_string(fc.inputs()) +
                                      " inputs, previous layer provides " +
                                      std::to_string(channels));
              }
              check_finite(fc.weights, i, "weights");
              check_finite(fc.bias, i, "bias");
              channels = fc.outputs();
            },
            [&](const Conv1DLayer& conv) {
              if (conv.filters < 1 || conv.channels < 1 || conv.width < 1) {
                throw InvalidArgument(at_layer(i) + "conv1d needs filters, channels, width >= 1");
              }
              if (conv.weights.rows() != conv.filters ||
                  conv.weights.cols() != conv.channels * conv.width) {
                throw InvalidArgument(at_layer(i) + "conv1d weight tensor shape mismatch");
              }
              if (conv.bias.size() != conv.filters) {
                throw InvalidArgument(at_layer(i) + "conv1d bias length != filters");
              }
              if (conv.stride < 1 || conv.dilation < 1 || conv.pad_left < 0 || conv.pad_right < 0) {
                throw InvalidArgument(at_layer(i) +
                                      "conv1d needs stride, dilation >= 1 and padding >= 0");
              }
              if (conv.channels != channels) {
                throw InvalidArgument(at_layer(i) + "conv1d expects " +
                                      std::to_string(conv.channels) +
                                      " channels, previous layer provides " +
                                      std::to_string(channels));
              }
              check_finite(conv.weights, i, "weights");
              check_finite(conv.bias, i, "bias");
              channels = conv.filters;
            },
            [](const ReluLayer&) {}},
        layers_[i]);
  }
}

Eigen::Index Network::channels_before(std::size_t index) const {
  Eigen::Index channels = input_features_;
  for (std::size_t i = 0; i < index && i < layers_.size(); ++i) {
    if (const auto* fc = std::get_if<FullyConnectedLayer>(&layers_[i])) channels = fc->outputs();
    if (const auto* conv = std::get_if<Conv1DLayer>(&layers_[i])) channels = conv->filters;
  }
  return channels;
}

Eigen::Index Network::output_channels() const { return channels_before(layers_.size()); }

Eigen::Index Network::output_length(Eigen::Index input_length) const {
  if (input_length < 1) throw InputTooShortError("network: input length must be >= 1");
  Eigen::Index length = input_length;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (const auto* conv = std::get_if<Conv1DLayer>(&layers_[i])) {
      const Eigen::Index next = conv->output_length(length);
      if (next < 1) {
        throw InputTooShortError(at_layer(i) + "input length " + std::to_string(input_length) +
                                 " is below the receptive field (minimum " +
                                 std::to_string(min_input_length()) + ")");
      }
      length = next;
    }
  }
  return length;
}

Eigen::Index Network::min_input_length() const {
  Eigen::Index length = 1;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    if (const auto* conv = std::get_if<Conv1DLayer>(&*it)) {
      length = conv->required_input_length(length);
    }
  }
  return length;
}

Eigen::MatrixXd apply_layer(const Layer& layer, const Eigen::MatrixXd& input) {
  return std::visit(
      Overloaded{
          [&](const FullyConnectedLayer& fc) -> Eigen::MatrixXd {
            if (input.rows() != fc.inputs()) throw InvalidArgument("fc: input row mismatch");
            Eigen::MatrixXd out = fc.weights * input;
            out.colwise() += fc.bias;
            return out;
          },
          [&](const Conv1DLayer& conv) -> Eigen::MatrixXd {
            if (input.rows() != conv.channels) throw InvalidArgument("conv1d: channel mismatch");
            const Eigen::Index length = input.cols();
            const Eigen::Index out_length = conv.output_length(length);
            if (out_length < 1) throw InputTooShortError("conv1d: input shorter than the kernel span");
            Eigen::MatrixXd out(conv.filters, out_length);
            for (Eigen::Index f = 0; f < conv.filters; ++f) {
              for (Eigen::Index t = 0; t < out_length; ++t) {
                double acc = conv.bias[f];
                for (Eigen::Index c = 0; c < conv.channels; ++c) {
                  for (Eigen::Index k = 0; k < conv.width; ++k) {
                    const Eigen::Index pos = t * conv.stride + k * conv.dilation - conv.pad_left;
                    if (pos >= 0 && pos < length) acc += conv.weight(f, c, k) * input(c, pos);
                  }
                }
                out(f, t) = acc;
              }
            }
            return out;
          },
          [&](const ReluLayer&) -> Eigen::MatrixXd { return input.cwiseMax(0.0); }},
      layer);
}

Eigen::MatrixXd Network::forward(const Eigen::MatrixXd& input) const {
  if (input.rows() != input_features_) {
    throw InvalidArgument("forward: input has " + std::to_string(input.rows()) +
                          " features, network expects " + std::to_string(input_features_));
  }
  output_length(input.cols());
  Eigen::MatrixXd x = input;
  for (const Layer& layer : layers_) x = apply_layer(layer, x);
  return x;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& values) {
  Eigen::VectorXd out(values.size());
  const Eigen::Index length = values.cols();
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out.segment(i * length, length) = values.row(i).transpose();
  }
  return out;
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& state, Eigen::Index channels, Eigen::Index length) {
  if (state.size() != channels * length) throw InvalidArgument("unflatten: size mismatch");
  Eigen::MatrixXd out(channels, length);
  for (Eigen::Index i = 0; i < channels; ++i) {
    out.row(i) = state.segment(i * length, length).transpose();
  }
  return out;
}

Star fc_reach(const FullyConnectedLayer& layer, const Star& input) {
  const Eigen::Index n = input.dimension();
  if (layer.inputs() < 1 || n % layer.inputs() != 0) {
    throw InvalidArgument("fc_reach: star dimension " + std::to_string(n) +
                          " is not a multiple of the layer input size " +
                          std::to_string(layer.inputs()));
  }
  if (layer.bias.size() != layer.outputs()) throw InvalidArgument("fc_reach: bias length mismatch");
  const Eigen::Index length = n / layer.inputs();
  Eigen::VectorXd center = fc_rows(layer, input.center(), length);
  for (Eigen::Index o = 0; o < layer.outputs(); ++o) {
    center.segment(o * length, length).array() += layer.bias[o];
  }
  return input.remap(std::move(center), fc_rows(layer, input.basis(), length));
}

Star conv1d_reach(const Conv1DLayer& layer, const Star& input, Eigen::Index input_length) {
  if (input_length < 1 || input.dimension() != layer.channels * input_length) {
    throw InvalidArgument("conv1d_reach: star dimension " + std::to_string(input.dimension()) +
                          " != channels * length = " + std::to_string(layer.channels) + " * " +
                          std::to_string(input_length));
  }
  const Eigen::Index out_length = layer.output_length(input_length);
  if (out_length < 1) {
    throw InputTooShortError("conv1d_reach: input length " + std::to_string(input_length) +
                             " gives no output step");
  }
  Eigen::VectorXd center = conv_rows(layer, input.center(), input_length, out_length);
  for (Eigen::Index f = 0; f < layer.filters; ++f) {
    center.segment(f * out_length, out_length).array() += layer.bias[f];
  }
  return input.remap(std::move(center), conv_rows(layer, input.basis(), input_length, out_length));
}

Star relu_reach_approx(const Star& input) {
  const lp::BoxedPolytope predicate = input.predicate();
  if (!predicate.feasible()) throw EmptySetError("relu_reach_approx: input star is empty");

  const Eigen::Index n = input.dimension();
  const Eigen::Index m = input.generator_count();
  const Eigen::Index p = input.constraint_count();

  enum class Phase { kActive, kInactive, kUnstable };
  std::vector<Phase> phase(static_cast<std::size_t>(n));
  std::vector<Interval> range(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> unstable;
  for (Eigen::Index i = 0; i < n; ++i) {
    // The box bound ignores constraint rows, so it only ever settles neurons
    // that the LP would also find stable.
    Interval r = box_range(input, i);
    if (r.lower() < 0.0 && r.upper() > 0.0 && p > 0) r = coordinate_range(input, predicate, i);
    range[i] = r;
    if (r.lower() >= 0.0) {
      phase[i] = Phase::kActive;
    } else if (r.upper() <= 0.0) {
      phase[i] = Phase::kInactive;
    } else {
      phase[i] = Phase::kUnstable;
      unstable.push_back(i);
    }
  }

  const auto k = static_cast<Eigen::Index>(unstable.size());
  Eigen::VectorXd center = input.center();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, m + k);
  basis.leftCols(m) = input.basis();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p + 2 * k, m + k);
  c.topLeftCorner(p, m) = input.constraint_matrix();
  Eigen::VectorXd d(p + 2 * k);
  d.head(p) = input.constraint_rhs();
  Eigen::VectorXd lo(m + k);
  Eigen::VectorXd hi(m + k);
  lo.head(m) = input.alpha_lower();
  hi.head(m) = input.alpha_upper();

  for (Eigen::Index i = 0; i < n; ++i) {
    if (phase[i] == Phase::kInactive) {
      center[i] = 0.0;
      basis.row(i).setZero();
    }
  }
  for (Eigen::Index q = 0; q < k; ++q) {
    const Eigen::Index i = unstable[q];
    const double l = range[i].lower();
    const double u = range[i].upper();
    const Eigen::Index var = m + q;
    const double ci = input.center()[i];
    // y >= x  <=>  V_i a - y <= -c_i
    c.row(p + 2 * q).head(m) = input.basis().row(i);
    c(p + 2 * q, var) = -1.0;
    d[p + 2 * q] = -ci;
    // y <= u (x - l) / (u - l)  <=>  y - s V_i a <= s (c_i - l)
    const double s = u / (u - l);
    c.row(p + 2 * q + 1).head(m) = -s * input.basis().row(i);
    c(p + 2 * q + 1, var) = 1.0;
    d[p + 2 * q + 1] = s * (ci - l);
    // y >= 0 (and y <= u, implied) as the coefficient box.
    lo[var] = 0.0;
    hi[var] = u;
    center[i] = 0.0;
    basis.row(i).setZero();
    basis(i, var) = 1.0;
  }
  return Star(Star::Unchecked{}, std::move(center), std::move(basis), std::move(c), std::move(d),
              std::move(lo), std::move(hi));
}

ReachResult network_reach(const Network& net, const Star& input, Eigen::Index input_length) {
  if (input.dimension() != net.input_features() * input_length) {
    throw InvalidArgument("network_reach: input star dimension " +
                          std::to_string(input.dimension()) + " != features * length = " +
                          std::to_string(net.input_features()) + " * " +
                          std::to_string(input_length));
  }
  net.output_length(input_length);

  Star current = input;
  Eigen::Index channels = net.input_features();
  Eigen::Index length = input_length;
  std::vector<LayerStats> stats;
  stats.reserve(net.layers().size());
  for (std::size_t i = 0; i < net.layers().size(); ++i) {
    const Layer& layer = net.layers()[i];
    const auto start = Clock::now();
    const Eigen::Index before = current.generator_count();
    std::visit(Overloaded{[&](const FullyConnectedLayer& fc) {
                            current = fc_reach(fc, current);
                            channels = fc.outputs();
                          },
                          [&](const Conv1DLayer& conv) {
                            current = conv1d_reach(conv, current, length);
                            length = conv.output_length(length);
                            channels = conv.filters;
                          },
                          [&](const ReluLayer&) {
                            current = relu_reach_approx(current);
                            // Affine layers keep the predicate verbatim; only a
                            // relaxation can change feasibility.
                            if (current.is_empty()) {
                              throw InternalError(at_layer(i) + "reachable set became empty");
                            }
                          }},
               layer);
    LayerStats s;
    s.kind = layer_kind(layer);
    s.generators = current.generator_count();
    s.constraints = current.constraint_count();
    s.channels = channels;
    s.length = length;
    s.unstable_neurons = current.generator_count() - before;
    s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    stats.push_back(std::move(s));
  }
  return ReachResult{std::move(current), channels, length, std::move(stats)};
}

}  // namespace tsreach
