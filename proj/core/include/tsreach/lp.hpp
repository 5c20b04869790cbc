#ifndef TSREACH_LP_HPP
#define TSREACH_LP_HPP

#include <memory>

#include <Eigen/Dense>

#include "tsreach/interval.hpp"

namespace tsreach::lp {

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kOptimalityTolerance = 1e-9;

/// Result of one linear objective over a BoxedPolytope.
///
/// `value` is an upper bound on the true optimum certified through weak
/// duality (Lagrangian bound with the box handled exactly), so it never
/// undershoots the optimum by more than floating-point rounding. `point`
/// is the primal vertex the simplex stopped at.
struct Optimum {
  double value = 0.0;
  Eigen::VectorXd point;
};

/// The polytope {x : A x <= b, lower <= x <= upper} with finite box bounds,
/// prepared for repeated linear objective queries.
///
/// Construction runs phase one of a bounded-variable dense tableau simplex
/// (Bland's rule) once; every objective query restarts phase two from the
/// stored feasible basis. Instances are immutable and safe to query from
/// several threads.
class BoxedPolytope {
 public:
  BoxedPolytope(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd lower,
                Eigen::VectorXd upper);

  Eigen::Index dimension() const { return lower_.size(); }
  Eigen::Index constraint_count() const { return a_.rows(); }

  bool feasible() const { return feasible_; }

  /// A point of the polytope. Throws EmptySetError when infeasible.
  const Eigen::VectorXd& feasible_point() const;

  Optimum maximize(const Eigen::VectorXd& objective) const;
  Optimum minimize(const Eigen::VectorXd& objective) const;

  /// [min, max] of objective.x + offset, both ends certified.
  Interval range(const Eigen::VectorXd& objective, double offset = 0.0) const;

 private:
  struct Tableau;

  double dual_bound(const Eigen::VectorXd& objective, const Eigen::VectorXd& row_duals) const;

  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  bool feasible_ = false;
  Eigen::VectorXd feasible_point_;
  std::shared_ptr<const Tableau> phase_one_;
};

}  // namespace tsreach::lp

#endif  // TSREACH_LP_HPP
