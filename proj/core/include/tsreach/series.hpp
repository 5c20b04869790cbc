#ifndef TSREACH_SERIES_HPP
#define TSREACH_SERIES_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tsreach {

/// An n_f x t_s block of a multivariate time series. Rows are features,
/// columns are consecutive time steps starting at `start_time` (one-based).
class SeriesWindow {
 public:
  SeriesWindow(Eigen::MatrixXd values, std::vector<std::string> feature_names = {},
               long start_time = 1);

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  long start_time() const { return start_time_; }
  long end_time() const { return start_time_ + static_cast<long>(length()) - 1; }

  Eigen::Index features() const { return values_.rows(); }
  Eigen::Index length() const { return values_.cols(); }

  /// Feature-major flattening (feature * length + time).
  Eigen::VectorXd flattened() const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> feature_names_;
  long start_time_;
};

}  // namespace tsreach

#endif  // TSREACH_SERIES_HPP
