#include "tsreach/star.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "tsreach/errors.hpp"

namespace tsreach {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.array().isFinite().all(); }

}  // namespace

Star::Star(Eigen::VectorXd center, Eigen::MatrixXd basis, Eigen::MatrixXd constraint_matrix,
           Eigen::VectorXd constraint_rhs, Eigen::VectorXd alpha_lower, Eigen::VectorXd alpha_upper)
    : Star(Unchecked{}, std::move(center), std::move(basis), std::move(constraint_matrix),
           std::move(constraint_rhs), std::move(alpha_lower), std::move(alpha_upper)) {
  validate_shapes();
  if (!all_finite(center_) || !all_finite(basis_) || !all_finite(constraint_matrix_) ||
      !all_finite(constraint_rhs_) || !all_finite(alpha_lower_) || !all_finite(alpha_upper_)) {
    throw InvalidArgument("star: all entries must be finite");
  }
  if (is_empty()) throw EmptySetError("star: predicate region is empty");
}

Star::Star(Unchecked, Eigen::VectorXd center, Eigen::MatrixXd basis,
           Eigen::MatrixXd constraint_matrix, Eigen::VectorXd constraint_rhs,
           Eigen::VectorXd alpha_lower, Eigen::VectorXd alpha_upper)
    : center_(std::move(center)),
      basis_(std::move(basis)),
      constraint_matrix_(std::move(constraint_matrix)),
      constraint_rhs_(std::move(constraint_rhs)),
      alpha_lower_(std::move(alpha_lower)),
      alpha_upper_(std::move(alpha_upper)) {
  if (constraint_matrix_.rows() == 0) constraint_matrix_.resize(0, basis_.cols());
}

void Star::validate_shapes() const {
  const Eigen::Index n = center_.size();
  const Eigen::Index m = basis_.cols();
  if (basis_.rows() != n) {
    throw InvalidArgument("star: basis has " + std::to_string(basis_.rows()) +
                          " rows, center has " + std::to_string(n));
  }
  if (constraint_matrix_.cols() != m) {
    throw InvalidArgument("star: constraint matrix has " + std::to_string(constraint_matrix_.cols()) +
                          " columns, basis has " + std::to_string(m));
  }
  if (constraint_rhs_.size() != constraint_matrix_.rows()) {
    throw InvalidArgument("star: constraint rhs length mismatch");
  }
  if (alpha_lower_.size() != m || alpha_upper_.size() != m) {
    throw InvalidArgument("star: coefficient bounds must have one entry per generator");
  }
  if ((alpha_lower_.array() > alpha_upper_.array()).any()) {
    throw InvalidArgument("star: coefficient lower bound exceeds upper bound");
  }
}

Star Star::from_box(const Eigen::VectorXd& center, const Eigen::VectorXd& radii) {
  if (radii.size() != center.size()) {
    throw InvalidArgument("from_box: radii length " + std::to_string(radii.size()) +
                          " != center length " + std::to_string(center.size()));
  }
  if (!all_finite(center) || !all_finite(radii)) throw InvalidArgument("from_box: non-finite input");
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < radii.size(); ++k) {
    if (radii[k] < 0.0) {
      throw InvalidArgument("from_box: negative radius at index " + std::to_string(k));
    }
    if (radii[k] > 0.0) active.push_back(k);
  }
  const auto m = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(center.size(), m);
  for (Eigen::Index g = 0; g < m; ++g) basis(active[g], g) = radii[active[g]];
  return Star(Unchecked{}, center, std::move(basis), Eigen::MatrixXd(0, m), Eigen::VectorXd(0),
              Eigen::VectorXd::Constant(m, -1.0), Eigen::VectorXd::Constant(m, 1.0));
}

Star Star::point(const Eigen::VectorXd& center) {
  return from_box(center, Eigen::VectorXd::Zero(center.size()));
}

Star Star::remap(Eigen::VectorXd center, Eigen::MatrixXd basis) const {
  if (basis.cols() != generator_count() || basis.rows() != center.size()) {
    throw InvalidArgument("remap: expected an n x " + std::to_string(generator_count()) +
                          " basis matching the center length");
  }
  return Star(Unchecked{}, std::move(center), std::move(basis), constraint_matrix_,
              constraint_rhs_, alpha_lower_, alpha_upper_);
}

Star Star::affine_map(const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias) const {
  if (weights.cols() != dimension()) {
    throw InvalidArgument("affine_map: weight matrix has " + std::to_string(weights.cols()) +
                          " columns, star dimension is " + std::to_string(dimension()));
  }
  if (bias.size() != weights.rows()) {
    throw InvalidArgument("affine_map: bias length " + std::to_string(bias.size()) +
                          " != weight rows " + std::to_string(weights.rows()));
  }
  return remap(weights * center_ + bias, weights * basis_);
}

lp::BoxedPolytope Star::predicate() const {
  return lp::BoxedPolytope(constraint_matrix_, constraint_rhs_, alpha_lower_, alpha_upper_);
}

Interval coordinate_range(const Star& star, const lp::BoxedPolytope& predicate, Eigen::Index dim) {
  if (dim < 0 || dim >= star.dimension()) {
    throw InvalidArgument("bounds: dimension " + std::to_string(dim) + " out of range [0, " +
                          std::to_string(star.dimension()) + ")");
  }
  if (!predicate.feasible()) throw EmptySetError("bounds: star is empty");
  const Eigen::VectorXd row = star.basis().row(dim).transpose();
  if (row.isZero(0.0)) return Interval::point(star.center()[dim]);
  return predicate.range(row, star.center()[dim]);
}

Interval box_range(const Star& star, Eigen::Index dim) {
  double lo = star.center()[dim];
  double hi = lo;
  const auto& basis = star.basis();
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const double v = basis(dim, j);
    if (v == 0.0) continue;
    const double a = v * star.alpha_lower()[j];
    const double b = v * star.alpha_upper()[j];
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return Interval(lo, hi);
}

Interval Star::bounds(Eigen::Index dim) const {
  return coordinate_range(*this, predicate(), dim).widened(kLpTolerance);
}

std::vector<Interval> Star::all_bounds() const {
  const lp::BoxedPolytope lp = predicate();
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(dimension()));
  for (Eigen::Index i = 0; i < dimension(); ++i) {
    out.push_back(coordinate_range(*this, lp, i).widened(kLpTolerance));
  }
  return out;
}

Star Star::add_halfspace(const Eigen::VectorXd& direction, double rhs) const {
  if (direction.size() != generator_count()) {
    throw InvalidArgument("add_halfspace: direction has length " + std::to_string(direction.size()) +
                          ", star has " + std::to_string(generator_count()) + " generators");
  }
  const Eigen::Index p = constraint_count();
  Eigen::MatrixXd c(p + 1, generator_count());
  c.topRows(p) = constraint_matrix_;
  c.row(p) = direction.transpose();
  Eigen::VectorXd d(p + 1);
  d.head(p) = constraint_rhs_;
  d[p] = rhs;
  return Star(Unchecked{}, center_, basis_, std::move(c), std::move(d), alpha_lower_, alpha_upper_);
}

Star Star::append_generator(const Eigen::VectorXd& column, const Interval& alpha_range) const {
  if (column.size() != dimension()) {
    throw InvalidArgument("append_generator: column length " + std::to_string(column.size()) +
                          " != star dimension " + std::to_string(dimension()));
  }
  const Eigen::Index m = generator_count();
  Eigen::MatrixXd basis(dimension(), m + 1);
  basis.leftCols(m) = basis_;
  basis.col(m) = column;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(constraint_count(), m + 1);
  c.leftCols(m) = constraint_matrix_;
  Eigen::VectorXd lo(m + 1);
  Eigen::VectorXd hi(m + 1);
  lo << alpha_lower_, alpha_range.lower();
  hi << alpha_upper_, alpha_range.upper();
  return Star(Unchecked{}, center_, std::move(basis), std::move(c), constraint_rhs_, std::move(lo),
              std::move(hi));
}

bool Star::is_empty() const { return !predicate().feasible(); }

std::vector<Eigen::VectorXd> Star::sample_members(std::size_t count, std::uint64_t seed) const {
  const lp::BoxedPolytope lp = predicate();
  if (!lp.feasible()) throw EmptySetError("sample_members: star is empty");

  const Eigen::Index m = generator_count();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);

  auto member = [&](const Eigen::VectorXd& alpha) -> Eigen::VectorXd {
    return center_ + basis_ * alpha;
  };

  constexpr std::size_t kMinAttempts = 10000;
  constexpr double kMinAcceptance = 1e-4;
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  Eigen::VectorXd alpha(m);
  while (out.size() < count) {
    if (attempts >= kMinAttempts &&
        static_cast<double>(accepted) < kMinAcceptance * static_cast<double>(attempts)) {
      break;
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      alpha[j] = alpha_lower_[j] + (alpha_upper_[j] - alpha_lower_[j]) * unit(rng);
    }
    ++attempts;
    if (constraint_count() == 0 ||
        ((constraint_matrix_ * alpha - constraint_rhs_).array() <= 0.0).all()) {
      ++accepted;
      out.push_back(member(alpha));
    }
  }
  if (out.size() == count) return out;

  // Hit-and-run from an LP-feasible point: every step stays inside the polytope.
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd current = lp.feasible_point();
  Eigen::VectorXd dir(m);
  auto step = [&] {
    for (Eigen::Index j = 0; j < m; ++j) {
      dir[j] = alpha_upper_[j] > alpha_lower_[j] ? normal(rng) : 0.0;
    }
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    auto restrict = [&](double rate, double slack) {
      slack = std::max(slack, 0.0);
      if (rate > 1e-15) t_hi = std::min(t_hi, slack / rate);
      else if (rate < -1e-15) t_lo = std::max(t_lo, slack / rate);
    };
    for (Eigen::Index j = 0; j < m; ++j) {
      restrict(dir[j], alpha_upper_[j] - current[j]);
      restrict(-dir[j], current[j] - alpha_lower_[j]);
    }
    for (Eigen::Index i = 0; i < constraint_count(); ++i) {
      restrict(constraint_matrix_.row(i).dot(dir),
               constraint_rhs_[i] - constraint_matrix_.row(i).dot(current));
    }
    if (!std::isfinite(t_lo) || !std::isfinite(t_hi) || t_lo > t_hi) return;
    current += (t_lo + (t_hi - t_lo) * unit(rng)) * dir;
  };
  for (int burn = 0; burn < 50; ++burn) step();
  while (out.size() < count) {
    step();
    out.push_back(member(current));
  }
  return out;
}

bool Star::contains(const Eigen::VectorXd& x, double tolerance) const {
  if (x.size() != dimension()) {
    throw InvalidArgument("contains: point length mismatch");
  }
  const Eigen::Index n = dimension();
  const Eigen::Index m = generator_count();
  const Eigen::Index p = constraint_count();
  Eigen::MatrixXd a(p + 2 * n, m);
  Eigen::VectorXd b(p + 2 * n);
  a.topRows(p) = constraint_matrix_;
  b.head(p) = constraint_rhs_;
  const Eigen::VectorXd offset = x - center_;
  a.middleRows(p, n) = basis_;
  b.segment(p, n) = offset.array() + tolerance;
  a.bottomRows(n) = -basis_;
  b.tail(n) = -offset.array() + tolerance;
  return lp::BoxedPolytope(std::move(a), std::move(b), alpha_lower_, alpha_upper_).feasible();
}

}  // namespace tsreach
