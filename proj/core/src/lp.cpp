#include "tsreach/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tsreach/errors.hpp"

namespace tsreach::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-11;
constexpr double kTieTolerance = 1e-13;

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Status { kOptimal, kUnbounded };

}  // namespace

// Dense tableau T = B^-1 [A | I | -I_art] of the equality form
// A x + s (- a) = b. Basic variables hold `beta`; every nonbasic variable
// sits at one of its bounds.
struct BoxedPolytope::Tableau {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  RowMajorMatrix t;
  Eigen::VectorXd beta;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  std::vector<Eigen::Index> basis;
  std::vector<Eigen::Index> row_of;
  std::vector<char> at_upper;
  Eigen::VectorXd reduced;

  double nonbasic_value(Eigen::Index j) const { return at_upper[j] ? hi[j] : lo[j]; }

  double value(Eigen::Index j) const {
    return row_of[j] >= 0 ? beta[row_of[j]] : nonbasic_value(j);
  }

  void pivot(Eigen::Index r, Eigen::Index j) {
    const double p = t(r, j);
    t.row(r) /= p;
    t(r, j) = 1.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = t(i, j);
      if (f == 0.0) continue;
      t.row(i) -= f * t.row(r);
      t(i, j) = 0.0;
    }
    const double dj = reduced[j];
    if (dj != 0.0) {
      reduced -= dj * t.row(r).transpose();
      reduced[j] = 0.0;
    }
    row_of[basis[r]] = -1;
    basis[r] = j;
    row_of[j] = r;
  }

  // Maximize cost.x from the current (primal feasible) basis.
  Status maximize(const Eigen::VectorXd& cost) {
    reduced = cost;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double cb = cost[basis[i]];
      if (cb != 0.0) reduced -= cb * t.row(i).transpose();
    }
    for (Eigen::Index i = 0; i < rows; ++i) reduced[basis[i]] = 0.0;

    const long max_iterations = 50L * (rows + cols) + 1000;
    for (long iter = 0; iter < max_iterations; ++iter) {
      // Bland: lowest-index improving nonbasic variable.
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (row_of[j] >= 0 || hi[j] <= lo[j]) continue;
        const double d = reduced[j];
        if ((!at_upper[j] && d > kOptimalityTolerance) || (at_upper[j] && d < -kOptimalityTolerance)) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Status::kOptimal;

      const double dir = at_upper[entering] ? -1.0 : 1.0;
      double step = hi[entering] - lo[entering];
      Eigen::Index leave_row = -1;
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double a = t(i, entering);
        if (std::abs(a) <= kPivotTolerance) continue;
        const double rate = -a * dir;
        const Eigen::Index k = basis[i];
        double limit;
        if (rate < 0.0) {
          limit = (beta[i] - lo[k]) / -rate;
        } else {
          if (!std::isfinite(hi[k])) continue;
          limit = (hi[k] - beta[i]) / rate;
        }
        limit = std::max(limit, 0.0);
        if (limit < step - kTieTolerance ||
            (limit <= step + kTieTolerance && leave_row >= 0 && k < basis[leave_row])) {
          step = limit;
          leave_row = i;
        }
      }
      if (!std::isfinite(step)) return Status::kUnbounded;

      const double entering_value = nonbasic_value(entering) + dir * step;
      if (step != 0.0) beta -= (dir * step) * t.col(entering);

      if (leave_row < 0) {
        at_upper[entering] = !at_upper[entering];
        continue;
      }
      const Eigen::Index leaving = basis[leave_row];
      const double leaving_rate = -t(leave_row, entering) * dir;
      at_upper[leaving] = leaving_rate > 0.0;
      pivot(leave_row, entering);
      beta[leave_row] = entering_value;
    }
    throw InternalError("simplex iteration limit reached (" + std::to_string(rows) + " rows, " +
                        std::to_string(cols) + " columns)");
  }
};

BoxedPolytope::BoxedPolytope(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd lower,
                             Eigen::VectorXd upper)
    : a_(std::move(a)), b_(std::move(b)), lower_(std::move(lower)), upper_(std::move(upper)) {
  const Eigen::Index m = lower_.size();
  const Eigen::Index p = a_.rows();
  if (upper_.size() != m) throw InvalidArgument("lp: lower/upper bound length mismatch");
  if (a_.cols() != m && !(p == 0)) throw InvalidArgument("lp: constraint matrix column mismatch");
  if (p == 0) a_.resize(0, m);
  if (b_.size() != p) throw InvalidArgument("lp: constraint rhs length mismatch");
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j])) {
      throw InvalidArgument("lp: box bounds must be finite");
    }
  }

  if ((lower_.array() > upper_.array()).any()) {
    feasible_ = false;
    return;
  }
  if (p == 0) {
    feasible_ = true;
    feasible_point_ = lower_;
    return;
  }

  const Eigen::VectorXd residual = b_ - a_ * lower_;
  std::vector<Eigen::Index> artificial_rows;
  for (Eigen::Index i = 0; i < p; ++i) {
    if (residual[i] < 0.0) artificial_rows.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(artificial_rows.size());

  auto tab = std::make_shared<Tableau>();
  tab->rows = p;
  tab->cols = m + p + k;
  tab->t = RowMajorMatrix::Zero(p, tab->cols);
  tab->beta.resize(p);
  tab->lo = Eigen::VectorXd::Zero(tab->cols);
  tab->hi = Eigen::VectorXd::Constant(tab->cols, kInf);
  tab->lo.head(m) = lower_;
  tab->hi.head(m) = upper_;
  tab->basis.assign(p, -1);
  tab->row_of.assign(tab->cols, -1);
  tab->at_upper.assign(tab->cols, 0);

  Eigen::Index next_artificial = m + p;
  for (Eigen::Index i = 0; i < p; ++i) {
    if (residual[i] >= 0.0) {
      tab->t.row(i).head(m) = a_.row(i);
      tab->t(i, m + i) = 1.0;
      tab->beta[i] = residual[i];
      tab->basis[i] = m + i;
    } else {
      const Eigen::Index art = next_artificial++;
      tab->t.row(i).head(m) = -a_.row(i);
      tab->t(i, m + i) = -1.0;
      tab->t(i, art) = 1.0;
      tab->beta[i] = -residual[i];
      tab->basis[i] = art;
    }
    tab->row_of[tab->basis[i]] = i;
  }

  if (k > 0) {
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(tab->cols);
    cost.tail(k).setConstant(-1.0);
    if (tab->maximize(cost) != Status::kOptimal) {
      throw InternalError("lp: phase one reported unbounded");
    }
    double infeasibility = 0.0;
    for (Eigen::Index j = m + p; j < tab->cols; ++j) infeasibility += std::max(0.0, tab->value(j));
    const double scale = 1.0 + residual.cwiseAbs().maxCoeff();
    if (infeasibility > kFeasibilityTolerance * scale) {
      feasible_ = false;
      return;
    }
    // Fix artificials at zero and drive basic ones out where possible.
    for (Eigen::Index j = m + p; j < tab->cols; ++j) tab->hi[j] = 0.0;
    for (Eigen::Index r = 0; r < p; ++r) {
      if (tab->basis[r] < m + p) continue;
      tab->beta[r] = 0.0;
      Eigen::Index best = -1;
      double best_mag = 1e-7;
      for (Eigen::Index j = 0; j < m + p; ++j) {
        if (tab->row_of[j] >= 0) continue;
        const double mag = std::abs(tab->t(r, j));
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      if (best < 0) continue;
      const double entering_value = tab->nonbasic_value(best);
      tab->at_upper[tab->basis[r]] = 0;
      tab->pivot(r, best);
      tab->beta[r] = entering_value;
    }
  }

  feasible_ = true;
  feasible_point_.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    feasible_point_[j] = std::clamp(tab->value(j), lower_[j], upper_[j]);
  }
  phase_one_ = std::move(tab);
}

const Eigen::VectorXd& BoxedPolytope::feasible_point() const {
  if (!feasible_) throw EmptySetError("lp: polytope is empty");
  return feasible_point_;
}

double BoxedPolytope::dual_bound(const Eigen::VectorXd& objective,
                                 const Eigen::VectorXd& row_duals) const {
  // For any y >= 0: max c.x <= y.b + sum_j max_{x_j in box} (c - A^T y)_j x_j.
  double bound = row_duals.size() > 0 ? row_duals.dot(b_) : 0.0;
  const Eigen::VectorXd reduced =
      row_duals.size() > 0 ? Eigen::VectorXd(objective - a_.transpose() * row_duals) : objective;
  for (Eigen::Index j = 0; j < reduced.size(); ++j) {
    bound += std::max(reduced[j] * lower_[j], reduced[j] * upper_[j]);
  }
  return bound;
}

Optimum BoxedPolytope::maximize(const Eigen::VectorXd& objective) const {
  const Eigen::Index m = dimension();
  if (objective.size() != m) throw InvalidArgument("lp: objective length mismatch");
  if (!feasible_) throw EmptySetError("lp: polytope is empty");

  Optimum result;
  if (!phase_one_) {
    result.point.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      result.point[j] = objective[j] >= 0.0 ? upper_[j] : lower_[j];
    }
    result.value = dual_bound(objective, Eigen::VectorXd());
    return result;
  }

  Tableau tab = *phase_one_;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(tab.cols);
  cost.head(m) = objective;
  if (tab.maximize(cost) != Status::kOptimal) {
    throw UnboundedSetError("lp: objective unbounded over predicate");
  }

  result.point.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    result.point[j] = std::clamp(tab.value(j), lower_[j], upper_[j]);
  }
  const Eigen::Index p = constraint_count();
  Eigen::VectorXd duals(p);
  for (Eigen::Index i = 0; i < p; ++i) duals[i] = std::max(0.0, -tab.reduced[m + i]);
  const double certified = dual_bound(objective, duals);
  result.value = std::max(certified, objective.dot(result.point));
  return result;
}

Optimum BoxedPolytope::minimize(const Eigen::VectorXd& objective) const {
  Optimum result = maximize(-objective);
  result.value = -result.value;
  return result;
}

Interval BoxedPolytope::range(const Eigen::VectorXd& objective, double offset) const {
  const double hi = maximize(objective).value;
  const double lo = minimize(objective).value;
  return Interval(std::min(lo, hi) + offset, std::max(lo, hi) + offset);
}

}  // namespace tsreach::lp
