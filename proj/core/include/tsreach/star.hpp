#ifndef TSREACH_STAR_HPP
#define TSREACH_STAR_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tsreach/interval.hpp"
#include "tsreach/lp.hpp"

namespace tsreach {

/// Outward widening applied to every bound returned by Star::bounds.
inline constexpr double kLpTolerance = 1e-9;

/// Generalized star set {c + V a : C a <= d, a_lo <= a <= a_hi}.
///
/// `center` has the state dimension n, `basis` is n x m (one generator per
/// column), the predicate is given over the m coefficients a. Time-series
/// windows are flattened feature-major: state index = feature * t_s + time
/// (both zero-based).
///
/// Stars are immutable values; every operation returns a new star.
class Star {
 public:
  /// Validates shapes, finiteness of the box and non-emptiness of the
  /// predicate (one feasibility LP). Throws InvalidArgument / EmptySetError.
  Star(Eigen::VectorXd center, Eigen::MatrixXd basis, Eigen::MatrixXd constraint_matrix,
       Eigen::VectorXd constraint_rhs, Eigen::VectorXd alpha_lower, Eigen::VectorXd alpha_upper);

  /// Axis-aligned box [center - radii, center + radii]; one generator
  /// radius_k * e_k with a_k in [-1, 1] per strictly positive radius.
  static Star from_box(const Eigen::VectorXd& center, const Eigen::VectorXd& radii);

  /// The single point {center}, no generators.
  static Star point(const Eigen::VectorXd& center);

  Eigen::Index dimension() const { return center_.size(); }
  Eigen::Index generator_count() const { return basis_.cols(); }
  Eigen::Index constraint_count() const { return constraint_matrix_.rows(); }

  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& constraint_matrix() const { return constraint_matrix_; }
  const Eigen::VectorXd& constraint_rhs() const { return constraint_rhs_; }
  const Eigen::VectorXd& alpha_lower() const { return alpha_lower_; }
  const Eigen::VectorXd& alpha_upper() const { return alpha_upper_; }

  /// Same predicate, new center and generators (shapes checked, no LP).
  Star remap(Eigen::VectorXd center, Eigen::MatrixXd basis) const;

  /// Exact image {W x + b : x in this}.
  Star affine_map(const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias) const;

  /// Range of state coordinate `dim` (zero-based), each end from one LP and
  /// widened outward by kLpTolerance.
  Interval bounds(Eigen::Index dim) const;

  /// Bounds of every coordinate, sharing one phase-one solve.
  std::vector<Interval> all_bounds() const;

  /// Intersect with {a : direction . a <= rhs}. Emptiness is not checked.
  Star add_halfspace(const Eigen::VectorXd& direction, double rhs) const;

  /// Append one generator column with its own coefficient range; existing
  /// constraint rows get a zero coefficient for it.
  Star append_generator(const Eigen::VectorXd& column, const Interval& alpha_range) const;

  bool is_empty() const;

  /// `count` members drawn deterministically from `seed`. Rejection sampling
  /// over the coefficient box; switches to hit-and-run from an LP-feasible
  /// point when acceptance falls below 1e-4. Throws EmptySetError.
  std::vector<Eigen::VectorXd> sample_members(std::size_t count, std::uint64_t seed) const;

  /// Membership test by feasibility LP: exists a with |c + V a - x| <= tolerance.
  bool contains(const Eigen::VectorXd& x, double tolerance = 1e-7) const;

  /// The predicate polytope as a reusable LP. Throws nothing; check feasible().
  lp::BoxedPolytope predicate() const;

 private:
  struct Unchecked {};
  Star(Unchecked, Eigen::VectorXd center, Eigen::MatrixXd basis, Eigen::MatrixXd constraint_matrix,
       Eigen::VectorXd constraint_rhs, Eigen::VectorXd alpha_lower, Eigen::VectorXd alpha_upper);

  void validate_shapes() const;

  friend Star relu_reach_approx(const Star&);

  Eigen::VectorXd center_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd constraint_matrix_;
  Eigen::VectorXd constraint_rhs_;
  Eigen::VectorXd alpha_lower_;
  Eigen::VectorXd alpha_upper_;
};

/// Certified, unwidened range of one coordinate over an already-built
/// predicate LP of `star`.
Interval coordinate_range(const Star& star, const lp::BoxedPolytope& predicate, Eigen::Index dim);

/// Cheap outer bound of a coordinate that ignores the constraint rows.
Interval box_range(const Star& star, Eigen::Index dim);

}  // namespace tsreach

#endif  // TSREACH_STAR_HPP
