#include "tsreach/oracle.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

#include "tsreach/errors.hpp"

namespace tsreach::oracle {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kVertexSlack = 1e-9;

void check_caps(const Star& star) {
  const Eigen::Index m = star.generator_count();
  const Eigen::Index p = star.constraint_count();
  if (m > kMaxEnumGenerators || p + 2 * m > kMaxEnumConstraints) {
    throw InvalidArgument("vertex enumeration capped at m <= 6 and p + 2m <= 40 (got m = " +
                          std::to_string(m) + ", p = " + std::to_string(p) + ")");
  }
}

}  // namespace

std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& c, const Eigen::VectorXd& d,
                                                const Eigen::VectorXd& lower,
                                                const Eigen::VectorXd& upper) {
  const Eigen::Index m = lower.size();
  const Eigen::Index p = d.size();
  const Eigen::Index q = p + 2 * m;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(q, m);
  Eigen::VectorXd h(q);
  if (p > 0) g.topRows(p) = c;
  h.head(p) = d;
  for (Eigen::Index j = 0; j < m; ++j) {
    g(p + 2 * j, j) = 1.0;
    h[p + 2 * j] = upper[j];
    g(p + 2 * j + 1, j) = -1.0;
    h[p + 2 * j + 1] = -lower[j];
  }

  auto feasible = [&](const Eigen::VectorXd& a) {
    for (Eigen::Index i = 0; i < q; ++i) {
      if (g.row(i).dot(a) > h[i] + kVertexSlack * (1.0 + std::abs(h[i]))) return false;
    }
    return true;
  };

  std::vector<Eigen::VectorXd> vertices;
  if (m == 0) {
    if ((d.array() >= 0.0).all()) vertices.emplace_back(0);
    return vertices;
  }

  std::vector<Eigen::Index> pick(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) pick[i] = i;
  Eigen::MatrixXd sub(m, m);
  Eigen::VectorXd rhs(m);
  while (true) {
    for (Eigen::Index r = 0; r < m; ++r) {
      sub.row(r) = g.row(pick[r]);
      rhs[r] = h[pick[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    lu.setThreshold(kRankTolerance);
    if (lu.rank() == m) {
      const Eigen::VectorXd a = lu.solve(rhs);
      if (feasible(a)) {
        const bool duplicate = std::any_of(vertices.begin(), vertices.end(), [&](const auto& v) {
          return (v - a).cwiseAbs().maxCoeff() <= 1e-9;
        });
        if (!duplicate) vertices.push_back(a);
      }
    }
    // next combination in lexicographic order
    Eigen::Index i = m - 1;
    while (i >= 0 && pick[i] == q - m + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (Eigen::Index j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return vertices;
}

std::vector<Interval> vertex_enum_bounds(const Star& star) {
  check_caps(star);
  const auto vertices = enumerate_vertices(star.constraint_matrix(), star.constraint_rhs(),
                                           star.alpha_lower(), star.alpha_upper());
  if (vertices.empty()) throw EmptySetError("vertex_enum_bounds: predicate has no vertices");
  const Eigen::Index n = star.dimension();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = -lo;
  for (const auto& a : vertices) {
    const Eigen::VectorXd x = star.center() + star.basis() * a;
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  std::vector<Interval> out;
  for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(lo[i], hi[i]);
  return out;
}

bool vertex_enum_feasible(const Star& star) {
  check_caps(star);
  return !enumerate_vertices(star.constraint_matrix(), star.constraint_rhs(), star.alpha_lower(),
                             star.alpha_upper())
              .empty();
}

AffineMatrix conv_as_matrix(const Conv1DLayer& layer, Eigen::Index input_length) {
  const Eigen::Index out_length = layer.output_length(input_length);
  if (out_length < 1) throw InputTooShortError("conv_as_matrix: input too short");
  AffineMatrix out;
  out.matrix = Eigen::MatrixXd::Zero(layer.filters * out_length, layer.channels * input_length);
  out.bias.resize(layer.filters * out_length);
  for (Eigen::Index f = 0; f < layer.filters; ++f) {
    for (Eigen::Index t = 0; t < out_length; ++t) {
      const Eigen::Index row = f * out_length + t;
      out.bias[row] = layer.bias[f];
      // Padded coordinate of tap k is t*S + k*D; shifting back by P_l lands
      // in the unpadded input, where padding columns simply do not exist.
      for (Eigen::Index k = 0; k < layer.width; ++k) {
        const Eigen::Index padded = t * layer.stride + k * layer.dilation;
        const Eigen::Index source = padded - layer.pad_left;
        if (source < 0 || source >= input_length) continue;
        for (Eigen::Index c = 0; c < layer.channels; ++c) {
          out.matrix(row, c * input_length + source) += layer.weight(f, c, k);
        }
      }
    }
  }
  return out;
}

AffineMatrix fc_as_matrix(const FullyConnectedLayer& layer, Eigen::Index input_length) {
  AffineMatrix out;
  const Eigen::Index t = input_length;
  out.matrix = Eigen::MatrixXd::Zero(layer.outputs() * t, layer.inputs() * t);
  out.bias.resize(layer.outputs() * t);
  for (Eigen::Index o = 0; o < layer.outputs(); ++o) {
    for (Eigen::Index i = 0; i < layer.inputs(); ++i) {
      out.matrix.block(o * t, i * t, t, t) = layer.weights(o, i) * Eigen::MatrixXd::Identity(t, t);
    }
    out.bias.segment(o * t, t).setConstant(layer.bias[o]);
  }
  return out;
}

AffineMatrix network_as_matrix(const Network& net, Eigen::Index input_length) {
  const Eigen::Index n = net.input_features() * input_length;
  AffineMatrix total{Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
  Eigen::Index length = input_length;
  for (std::size_t i = 0; i < net.layers().size(); ++i) {
    const Layer& layer = net.layers()[i];
    AffineMatrix step;
    if (const auto* fc = std::get_if<FullyConnectedLayer>(&layer)) {
      step = fc_as_matrix(*fc, length);
    } else if (const auto* conv = std::get_if<Conv1DLayer>(&layer)) {
      step = conv_as_matrix(*conv, length);
      length = conv->output_length(length);
    } else {
      throw InvalidArgument("network_as_matrix: layer " + std::to_string(i) + " is not affine");
    }
    total.bias = step.matrix * total.bias + step.bias;
    total.matrix = step.matrix * total.matrix;
  }
  return total;
}

std::vector<Interval> box_image(const AffineMatrix& map, const Eigen::VectorXd& center,
                                const Eigen::VectorXd& radii) {
  const Eigen::VectorXd mid = map.matrix * center + map.bias;
  const Eigen::VectorXd spread = map.matrix.cwiseAbs() * radii;
  std::vector<Interval> out;
  for (Eigen::Index i = 0; i < mid.size(); ++i) out.emplace_back(mid[i] - spread[i], mid[i] + spread[i]);
  return out;
}

SoundnessReport sampled_soundness(const Network& forward_net, const Network& reach_net,
                                  const Star& input, Eigen::Index input_length, std::size_t count,
                                  std::uint64_t seed) {
  const ReachResult reach = network_reach(reach_net, input, input_length);
  SoundnessReport report;
  report.bounds = reach.output.all_bounds();
  const auto n = static_cast<Eigen::Index>(report.bounds.size());
  report.sampled_min = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  report.sampled_max = -report.sampled_min;

  const double tolerance = 2.0 * kLpTolerance;
  for (const Eigen::VectorXd& x : input.sample_members(count, seed)) {
    const Eigen::MatrixXd y =
        forward_net.forward(unflatten(x, forward_net.input_features(), input_length));
    const Eigen::VectorXd flat = flatten(y);
    if (flat.size() != n) throw InvalidArgument("sampled_soundness: networks disagree on output shape");
    bool violated = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double excess =
          std::max(report.bounds[i].lower() - flat[i], flat[i] - report.bounds[i].upper());
      if (excess > tolerance) violated = true;
      report.worst_excess = std::max(report.worst_excess, excess);
    }
    if (violated) ++report.violations;
    report.sampled_min = report.sampled_min.cwiseMin(flat);
    report.sampled_max = report.sampled_max.cwiseMax(flat);
    ++report.samples;
  }
  report.slack.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    report.slack[i] = std::max(report.sampled_min[i] - report.bounds[i].lower(),
                               report.bounds[i].upper() - report.sampled_max[i]);
  }
  report.max_slack = n > 0 ? report.slack.maxCoeff() : 0.0;
  return report;
}

}  // namespace tsreach::oracle
