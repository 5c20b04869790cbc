#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support/random_models.hpp"
#include "tsreach/errors.hpp"
#include "tsreach/lp.hpp"
#include "tsreach/oracle.hpp"
#include "tsreach/star.hpp"

namespace tsreach {
namespace {

constexpr double kTau = kLpTolerance;

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

void expect_interval_near(const Interval& got, double lo, double hi, double tol) {
  EXPECT_NEAR(got.lower(), lo, tol);
  EXPECT_NEAR(got.upper(), hi, tol);
}

TEST(Interval, RejectsReversedEnds) {
  EXPECT_THROW(Interval(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(Interval(0.0, std::nan("")), InvalidArgument);
}

TEST(Interval, IntersectAndContain) {
  const Interval a(0.0, 2.0);
  EXPECT_TRUE(a.contains(Interval(0.5, 2.0)));
  EXPECT_FALSE(a.contains(Interval(-0.1, 1.0)));
  EXPECT_EQ(*a.intersect(Interval(1.0, 3.0)), Interval(1.0, 2.0));
  EXPECT_FALSE(a.intersect(Interval(2.5, 3.0)).has_value());
}

TEST(BoxedPolytope, MaximizesOverBoxOnly) {
  lp::BoxedPolytope poly(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), vec({-1, 0}), vec({2, 3}));
  EXPECT_DOUBLE_EQ(poly.maximize(vec({1, -1})).value, 2.0);
  EXPECT_DOUBLE_EQ(poly.minimize(vec({1, -1})).value, -4.0);
}

TEST(BoxedPolytope, SimplexCorner) {
  // a >= 0, sum a <= 1
  Eigen::MatrixXd a(1, 3);
  a << 1, 1, 1;
  lp::BoxedPolytope poly(a, vec({1}), Eigen::VectorXd::Zero(3), Eigen::VectorXd::Constant(3, 5.0));
  const auto best = poly.maximize(vec({1, 2, 3}));
  EXPECT_NEAR(best.value, 3.0, 1e-12);
  EXPECT_NEAR(best.point[2], 1.0, 1e-12);
  EXPECT_NEAR(poly.minimize(vec({1, 2, 3})).value, 0.0, 1e-12);
}

TEST(BoxedPolytope, DetectsInfeasibility) {
  Eigen::MatrixXd a(2, 1);
  a << 1, -1;
  lp::BoxedPolytope poly(a, vec({-2, 1}), vec({-5}), vec({5}));
  EXPECT_FALSE(poly.feasible());
  EXPECT_THROW(poly.maximize(vec({1})), EmptySetError);
}

TEST(BoxedPolytope, DegenerateVerticesTerminate) {
  // Many redundant constraints through the same vertex exercise the
  // anti-cycling rule.
  Eigen::MatrixXd a(6, 2);
  a << 1, 1, 2, 2, 1, 2, 2, 1, 3, 3, 1, 0;
  lp::BoxedPolytope poly(a, vec({1, 2, 1.5, 1.5, 3, 1}), vec({0, 0}), vec({1, 1}));
  EXPECT_NEAR(poly.maximize(vec({1, 1})).value, 1.0, 1e-12);
}

TEST(StarFromBox, UnitBoxHasTwoGenerators) {
  const Star s = Star::from_box(vec({0, 0}), vec({1, 1}));
  EXPECT_EQ(s.generator_count(), 2);
  for (Eigen::Index d = 0; d < 2; ++d) expect_interval_near(s.bounds(d), -1.0 - kTau, 1.0 + kTau, 1e-15);
}

TEST(StarFromBox, SingleDisturbanceOnFourByFourWindow) {
  Eigen::MatrixXd window(4, 4);
  window << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16;
  SeriesWindow w(window);
  Eigen::VectorXd radii = Eigen::VectorXd::Zero(16);
  radii[0 * 4 + 1] = 2.0;  // feature 1, time 2
  const Star s = Star::from_box(w.flattened(), radii);
  EXPECT_EQ(s.generator_count(), 1);
  expect_interval_near(s.bounds(1), 0.0 - kTau, 4.0 + kTau, 1e-14);
  expect_interval_near(s.bounds(5), 6.0 - kTau, 6.0 + kTau, 1e-14);
}

TEST(StarFromBox, ZeroRadiusIsPoint) {
  const Star s = Star::from_box(vec({5}), vec({0}));
  EXPECT_EQ(s.generator_count(), 0);
  expect_interval_near(s.bounds(0), 5.0 - kTau, 5.0 + kTau, 0.0);
}

TEST(StarFromBox, RejectsNegativeRadius) {
  EXPECT_THROW(Star::from_box(vec({0}), vec({-1})), InvalidArgument);
}

TEST(StarAffineMap, IdentityKeepsEverything) {
  const Star s = Star::from_box(vec({1, 2}), vec({0.5, 1}));
  const Star t = s.affine_map(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  EXPECT_EQ(t.center(), s.center());
  EXPECT_EQ(t.basis(), s.basis());
  EXPECT_EQ(t.constraint_matrix(), s.constraint_matrix());
  EXPECT_EQ(t.alpha_lower(), s.alpha_lower());
}

TEST(StarAffineMap, DiagonalMapOfUnitBox) {
  Eigen::MatrixXd w(2, 2);
  w << 2, 0, 0, 3;
  const Star t = Star::from_box(vec({0, 0}), vec({1, 1})).affine_map(w, vec({1, -1}));
  EXPECT_EQ(t.center(), vec({1, -1}));
  expect_interval_near(t.bounds(0), -1.0 - kTau, 3.0 + kTau, 1e-14);
  expect_interval_near(t.bounds(1), -4.0 - kTau, 2.0 + kTau, 1e-14);
}

TEST(StarAffineMap, ShapeMismatchThrows) {
  const Star s = Star::from_box(vec({0, 0}), vec({1, 1}));
  EXPECT_THROW(s.affine_map(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3)), InvalidArgument);
}

TEST(StarHalfspace, HalvesTheBox) {
  const Star s = Star::from_box(vec({0, 0}), vec({1, 1})).add_halfspace(vec({1, 0}), 0.0);
  expect_interval_near(s.bounds(0), -1.0 - kTau, 0.0 + kTau, 1e-14);
  expect_interval_near(s.bounds(1), -1.0 - kTau, 1.0 + kTau, 1e-14);
}

TEST(StarHalfspace, ContradictionIsEmpty) {
  const Star s = Star::from_box(vec({0, 0}), vec({1, 1}));
  EXPECT_FALSE(s.is_empty());
  const Star e = s.add_halfspace(vec({1, 0}), -2.0);
  EXPECT_TRUE(e.is_empty());
  EXPECT_THROW(e.bounds(0), EmptySetError);
}

TEST(StarConstructor, RejectsInfeasiblePredicate) {
  Eigen::MatrixXd c(1, 1);
  c << 1;
  EXPECT_THROW(Star(vec({0}), Eigen::MatrixXd::Ones(1, 1), c, vec({-2}), vec({-1}), vec({1})),
               EmptySetError);
}

TEST(StarAppendGenerator, ZeroColumnChangesNothing) {
  const Star s = Star::from_box(vec({0.5, -1}), vec({1, 2}));
  const Star t = s.append_generator(vec({0, 0}), Interval(0, 0));
  EXPECT_EQ(t.generator_count(), 3);
  for (Eigen::Index d = 0; d < 2; ++d) {
    EXPECT_NEAR(t.bounds(d).lower(), s.bounds(d).lower(), 1e-14);
    EXPECT_NEAR(t.bounds(d).upper(), s.bounds(d).upper(), 1e-14);
  }
}

TEST(StarAppendGenerator, PointBecomesInterval) {
  const Star t = Star::point(vec({5})).append_generator(vec({1}), Interval(0, 2));
  expect_interval_near(t.bounds(0), 5.0 - kTau, 7.0 + kTau, 1e-14);
}

TEST(StarSampling, BoxSamplesStayInside) {
  const Star s = Star::from_box(vec({0, 0, 0}), vec({1, 1, 1}));
  const auto pts = s.sample_members(10, 7);
  ASSERT_EQ(pts.size(), 10u);
  for (const auto& p : pts) EXPECT_LE(p.cwiseAbs().maxCoeff(), 1.0);
}

TEST(StarSampling, PointRepeats) {
  const auto pts = Star::point(vec({1, 2})).sample_members(4, 1);
  ASSERT_EQ(pts.size(), 4u);
  for (const auto& p : pts) EXPECT_EQ(p, vec({1, 2}));
}

TEST(StarSampling, SameSeedSameSamples) {
  std::mt19937_64 rng(3);
  const Star s = testing::random_star(rng, 3, 3, 4);
  EXPECT_EQ(s.sample_members(20, 11), s.sample_members(20, 11));
}

TEST(StarSampling, ThinPolytopeStillSamples) {
  // Acceptance of the box is about 1e-6, which forces the walk.
  Eigen::MatrixXd c(2, 4);
  c << 1, 1, 1, 1, -1, -1, -1, -1;
  const Star s(Eigen::VectorXd::Zero(4), Eigen::MatrixXd::Identity(4, 4), c, vec({1e-5, 1e-5}),
               Eigen::VectorXd::Constant(4, -1.0), Eigen::VectorXd::Constant(4, 1.0));
  const auto pts = s.sample_members(50, 5);
  ASSERT_EQ(pts.size(), 50u);
  for (const auto& p : pts) EXPECT_TRUE(s.contains(p));
}

TEST(StarContains, MembershipByFeasibility) {
  const Star s = Star::from_box(vec({0, 0}), vec({1, 1})).add_halfspace(vec({1, 1}), 0.5);
  EXPECT_TRUE(s.contains(vec({0.2, 0.2})));
  EXPECT_FALSE(s.contains(vec({0.9, 0.9})));
}

TEST(StarBounds, AgreesWithVertexEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const Star s = testing::random_star(rng, 2, testing::uniform_int(rng, 1, 4),
                                        testing::uniform_int(rng, 0, 6));
    const auto lp = s.all_bounds();
    const auto exact = oracle::vertex_enum_bounds(s);
    for (std::size_t d = 0; d < lp.size(); ++d) {
      EXPECT_LE(lp[d].lower(), exact[d].lower());
      EXPECT_GE(lp[d].upper(), exact[d].upper());
      EXPECT_NEAR(lp[d].lower(), exact[d].lower(), 1e-7);
      EXPECT_NEAR(lp[d].upper(), exact[d].upper(), 1e-7);
    }
  }
}

}  // namespace
}  // namespace tsreach
