#include "tsreach/series.hpp"

#include "tsreach/errors.hpp"

namespace tsreach {

SeriesWindow::SeriesWindow(Eigen::MatrixXd values, std::vector<std::string> feature_names,
                           long start_time)
    : values_(std::move(values)), feature_names_(std::move(feature_names)), start_time_(start_time) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw InvalidArgument("series window needs at least one feature and one time step");
  }
  if (!values_.array().isFinite().all()) {
    throw InvalidArgument("series window contains non-finite values");
  }
  if (!feature_names_.empty() && static_cast<Eigen::Index>(feature_names_.size()) != values_.rows()) {
    throw InvalidArgument("series window: feature name count != feature count");
  }
}

Eigen::VectorXd SeriesWindow::flattened() const {
  Eigen::VectorXd out(values_.size());
  for (Eigen::Index i = 0; i < features(); ++i) {
    out.segment(i * length(), length()) = values_.row(i).transpose();
  }
  return out;
}

}  // namespace tsreach
