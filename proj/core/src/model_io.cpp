#include "tsreach/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "tsreach/errors.hpp"

namespace tsreach {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << text;
}

std::string layer_context(std::size_t index) { return "layer " + std::to_string(index) + ": "; }

const json& require(const json& obj, const char* key, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(layer_context(index) + "missing field '" + key + "'");
  return *it;
}

double as_number(const json& value, const std::string& context) {
  if (!value.is_number()) throw ParseError(context + "expected a number");
  return value.get<double>();
}

Eigen::Index as_index(const json& obj, const char* key, Eigen::Index fallback, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ParseError(layer_context(index) + "field '" + key + "' must be an integer");
  }
  return it->get<Eigen::Index>();
}

Eigen::VectorXd as_vector(const json& value, const std::string& context) {
  if (!value.is_array()) throw ParseError(context + "expected an array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) out[static_cast<Eigen::Index>(i)] = as_number(value[i], context);
  return out;
}

Eigen::MatrixXd as_matrix(const json& value, const std::string& context) {
  if (!value.is_array() || value.empty()) throw ParseError(context + "expected a non-empty 2-D array");
  const auto rows = static_cast<Eigen::Index>(value.size());
  const auto cols = static_cast<Eigen::Index>(value[0].is_array() ? value[0].size() : 0);
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = value[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(context + "ragged 2-D array");
    }
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = as_number(row[static_cast<std::size_t>(c)], context);
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double population_std(const Eigen::VectorXd& v) {
  const double mean = v.mean();
  return std::sqrt((v.array() - mean).square().mean());
}

}  // namespace

// -- network ------------------------------------------------------------------

Network parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("network: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("network: top level must be an object");
  if (auto it = doc.find("format_version"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() != kNetworkFormatVersion) {
      throw ParseError("network: unsupported format_version");
    }
  }
  auto features = doc.find("input_features");
  if (features == doc.end() || !features->is_number_integer()) {
    throw ParseError("network: missing integer 'input_features'");
  }
  auto layers_json = doc.find("layers");
  if (layers_json == doc.end() || !layers_json->is_array()) {
    throw ParseError("network: missing 'layers' array");
  }

  std::vector<Layer> layers;
  for (std::size_t i = 0; i < layers_json->size(); ++i) {
    const json& entry = (*layers_json)[i];
    if (!entry.is_object()) throw ParseError(layer_context(i) + "must be an object");
    const json& kind_json = require(entry, "kind", i);
    if (!kind_json.is_string()) throw ParseError(layer_context(i) + "'kind' must be a string");
    const std::string kind = kind_json.get<std::string>();
    const std::string ctx = layer_context(i);
    if (kind == "fc") {
      FullyConnectedLayer fc;
      fc.weights = as_matrix(require(entry, "weights", i), ctx + "weights: ");
      fc.bias = as_vector(require(entry, "bias", i), ctx + "bias: ");
      layers.emplace_back(std::move(fc));
    } else if (kind == "conv1d") {
      const json& w = require(entry, "weights", i);
      if (!w.is_array() || w.empty() || !w[0].is_array() || w[0].empty() || !w[0][0].is_array()) {
        throw ParseError(ctx + "conv1d weights must be a non-empty [filter][channel][tap] array");
      }
      const auto filters = static_cast<Eigen::Index>(w.size());
      const auto channels = static_cast<Eigen::Index>(w[0].size());
      const auto width = static_cast<Eigen::Index>(w[0][0].size());
      Conv1DLayer conv = Conv1DLayer::zeros(filters, channels, width);
      for (Eigen::Index f = 0; f < filters; ++f) {
        const Eigen::MatrixXd taps = as_matrix(w[static_cast<std::size_t>(f)], ctx + "weights: ");
        if (taps.rows() != channels || taps.cols() != width) {
          throw ParseError(ctx + "conv1d weights are ragged");
        }
        for (Eigen::Index c = 0; c < channels; ++c) {
          for (Eigen::Index k = 0; k < width; ++k) conv.weight(f, c, k) = taps(c, k);
        }
      }
      conv.bias = as_vector(require(entry, "bias", i), ctx + "bias: ");
      conv.stride = as_index(entry, "stride", 1, i);
      conv.dilation = as_index(entry, "dilation", 1, i);
      conv.pad_left = as_index(entry, "pad_left", 0, i);
      conv.pad_right = as_index(entry, "pad_right", 0, i);
      layers.emplace_back(std::move(conv));
    } else if (kind == "relu") {
      layers.emplace_back(ReluLayer{});
    } else {
      throw ParseError(ctx + "unsupported layer kind '" + kind + "'");
    }
  }
  try {
    return Network(features->get<Eigen::Index>(), std::move(layers));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("network: ") + e.what());
  }
}

std::string serialize_network(const Network& net) {
  json doc;
  doc["format_version"] = kNetworkFormatVersion;
  doc["input_features"] = net.input_features();
  json layers = json::array();
  for (const Layer& layer : net.layers()) {
    json entry;
    if (const auto* fc = std::get_if<FullyConnectedLayer>(&layer)) {
      entry["kind"] = "fc";
      json w = json::array();
      for (Eigen::Index r = 0; r < fc->weights.rows(); ++r) {
        w.push_back(vector_json(fc->weights.row(r).transpose()));
      }
      entry["weights"] = std::move(w);
      entry["bias"] = vector_json(fc->bias);
    } else if (const auto* conv = std::get_if<Conv1DLayer>(&layer)) {
      entry["kind"] = "conv1d";
      json w = json::array();
      for (Eigen::Index f = 0; f < conv->filters; ++f) {
        json per_filter = json::array();
        for (Eigen::Index c = 0; c < conv->channels; ++c) {
          json taps = json::array();
          for (Eigen::Index k = 0; k < conv->width; ++k) taps.push_back(conv->weight(f, c, k));
          per_filter.push_back(std::move(taps));
        }
        w.push_back(std::move(per_filter));
      }
      entry["weights"] = std::move(w);
      entry["bias"] = vector_json(conv->bias);
      entry["stride"] = conv->stride;
      entry["dilation"] = conv->dilation;
      entry["pad_left"] = conv->pad_left;
      entry["pad_right"] = conv->pad_right;
    } else {
      entry["kind"] = "relu";
    }
    layers.push_back(std::move(entry));
  }
  doc["layers"] = std::move(layers);
  return doc.dump(1) + "\n";
}

Network load_network(const std::filesystem::path& path) {
  try {
    return parse_network(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_network(const Network& net, const std::filesystem::path& path) {
  write_file(path, serialize_network(net));
}

// -- series -------------------------------------------------------------------

Dataset parse_series(const std::string& text, const std::vector<std::string>& feature_columns,
                     const std::string& target_column) {
  if (feature_columns.empty()) throw InvalidArgument("series: no feature columns requested");
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      for (auto cell : split_commas(line)) header.emplace_back(cell);
      break;
    }
  }
  if (header.empty()) throw ParseError("series: empty file");

  auto column_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) return c;
    }
    throw ParseError("series: missing column '" + name + "'");
  };
  std::vector<std::size_t> feature_idx;
  for (const auto& name : feature_columns) feature_idx.push_back(column_of(name));
  const std::size_t target_idx = column_of(target_column);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw ParseError("series: line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(header.size()));
    }
    auto parse = [&](std::size_t col) {
      const std::string_view cell = cells[col];
      double value = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size() ||
          !std::isfinite(value)) {
        throw ParseError("series: line " + std::to_string(line_no) + ", column '" + header[col] +
                         "': not a finite number: '" + std::string(cell) + "'");
      }
      return value;
    };
    std::vector<double> row;
    row.reserve(feature_idx.size() + 1);
    for (std::size_t c : feature_idx) row.push_back(parse(c));
    row.push_back(parse(target_idx));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("series: no data rows");

  Dataset ds;
  ds.feature_names = feature_columns;
  ds.target_name = target_column;
  const auto nf = static_cast<Eigen::Index>(feature_columns.size());
  const auto length = static_cast<Eigen::Index>(rows.size());
  ds.features.resize(nf, length);
  ds.target.resize(length);
  for (Eigen::Index t = 0; t < length; ++t) {
    const auto& row = rows[static_cast<std::size_t>(t)];
    for (Eigen::Index f = 0; f < nf; ++f) ds.features(f, t) = row[static_cast<std::size_t>(f)];
    ds.target[t] = row.back();
  }
  return ds;
}

Dataset load_series(const std::filesystem::path& path, const std::vector<std::string>& feature_columns,
                    const std::string& target_column) {
  try {
    return parse_series(read_file(path), feature_columns, target_column);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_series(const Dataset& ds, const std::filesystem::path& path) {
  std::string out;
  for (const auto& name : ds.feature_names) out += name + ",";
  out += ds.target_name + "\n";
  for (Eigen::Index t = 0; t < ds.length(); ++t) {
    for (Eigen::Index f = 0; f < ds.features.rows(); ++f) out += format_number(ds.features(f, t)) + ",";
    out += format_number(ds.target[t]) + "\n";
  }
  write_file(path, out);
}

std::pair<SeriesWindow, double> window(const Dataset& ds, long end_step, long length,
                                       TargetOffset offset) {
  const long total = static_cast<long>(ds.length());
  if (length < 1) throw InvalidArgument("window: length must be >= 1");
  if (end_step < length || end_step > total) {
    throw InvalidArgument("window: end step " + std::to_string(end_step) + " outside [" +
                          std::to_string(length) + ", " + std::to_string(total) + "]");
  }
  const long target_step = offset == TargetOffset::kNextStep ? end_step + 1 : end_step;
  if (target_step > total) {
    throw InvalidArgument("window: target step " + std::to_string(target_step) +
                          " is past the end of the series (" + std::to_string(total) + ")");
  }
  const long start = end_step - length + 1;
  SeriesWindow w(ds.features.middleCols(start - 1, length), ds.feature_names, start);
  return {std::move(w), ds.target[target_step - 1]};
}

Normalization feature_statistics(const Eigen::MatrixXd& features) {
  Normalization n;
  n.mean.resize(features.rows());
  n.stddev.resize(features.rows());
  for (Eigen::Index f = 0; f < features.rows(); ++f) {
    const Eigen::VectorXd row = features.row(f).transpose();
    n.mean[f] = row.mean();
    n.stddev[f] = population_std(row);
  }
  return n;
}

Dataset zscore(const Dataset& ds) {
  Dataset out = ds;
  out.normalization = feature_statistics(ds.features);
  for (Eigen::Index f = 0; f < ds.features.rows(); ++f) {
    const double sd = out.normalization.stddev[f];
    if (!(sd > 0.0)) {
      const std::string name =
          f < static_cast<Eigen::Index>(ds.feature_names.size()) ? ds.feature_names[f] : std::to_string(f);
      throw InvalidArgument("zscore: feature '" + name +
                            "' has zero standard deviation; screen it out first");
    }
    out.features.row(f) = (ds.features.row(f).array() - out.normalization.mean[f]) / sd;
  }
  return out;
}

Dataset denormalize(const Dataset& ds) {
  if (ds.normalization.mean.size() != ds.features.rows()) {
    throw InvalidArgument("denormalize: dataset carries no normalization parameters");
  }
  Dataset out = ds;
  for (Eigen::Index f = 0; f < ds.features.rows(); ++f) {
    out.features.row(f) =
        ds.features.row(f).array() * ds.normalization.stddev[f] + ds.normalization.mean[f];
  }
  out.normalization = Normalization{};
  return out;
}

// -- screening ----------------------------------------------------------------

Eigen::VectorXd prognosability(const std::vector<Eigen::MatrixXd>& units) {
  if (units.empty()) throw InvalidArgument("prognosability: no units");
  const Eigen::Index nf = units.front().rows();
  for (const auto& u : units) {
    if (u.rows() != nf) throw InvalidArgument("prognosability: units disagree on feature count");
    if (u.cols() < 2) throw InvalidArgument("prognosability: each trajectory needs >= 2 steps");
  }
  const auto count = static_cast<Eigen::Index>(units.size());
  Eigen::VectorXd scores(nf);
  for (Eigen::Index f = 0; f < nf; ++f) {
    Eigen::VectorXd ends(count);
    Eigen::VectorXd changes(count);
    for (Eigen::Index j = 0; j < count; ++j) {
      const auto& u = units[static_cast<std::size_t>(j)];
      ends[j] = u(f, u.cols() - 1);
      changes[j] = std::abs(u(f, 0) - u(f, u.cols() - 1));
    }
    const double denominator = changes.mean();
    scores[f] = denominator == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                   : std::exp(population_std(ends) / denominator);
  }
  return scores;
}

ScreeningResult screen_features(const std::vector<Eigen::MatrixXd>& units) {
  ScreeningResult r;
  r.scores = prognosability(units);
  for (Eigen::Index f = 0; f < r.scores.size(); ++f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& u : units) {
      lo = std::min(lo, u.row(f).minCoeff());
      hi = std::max(hi, u.row(f).maxCoeff());
    }
    if (std::isnan(r.scores[f]) || lo == hi) {
      r.dropped.push_back(f);
    } else {
      r.kept.push_back(f);
      if (r.scores[f] > 1.0) r.above_one.push_back(f);
    }
  }
  return r;
}

const std::vector<int>& turbofan_reduced_columns() {
  static const std::vector<int> columns = {3, 4, 7, 8, 9, 11, 12, 13, 14, 16, 17, 18, 19, 20, 22, 25, 26};
  return columns;
}

const std::vector<std::string>& turbofan_column_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out = {"unit", "time"};
    for (int i = 1; i <= 3; ++i) out.push_back("op_setting_" + std::to_string(i));
    for (int i = 1; i <= 21; ++i) out.push_back("sensor_" + std::to_string(i));
    return out;
  }();
  return names;
}

}  // namespace tsreach
