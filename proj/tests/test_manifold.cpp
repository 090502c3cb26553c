#include "wallcross/manifold.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace wallcross;

namespace {

std::vector<Submanifold> families() {
  std::vector<Submanifold> out;
  out.push_back(make_hyperquadric(2));
  out.push_back(make_hyperquadric(3));
  out.push_back(make_hyperquadric(4));
  out.push_back(make_veronese(1));
  out.push_back(make_veronese(3));
  out.push_back(make_plucker(1, 2));
  out.push_back(make_plucker(2, 3));
  return out;
}

Submanifold conic() {
  std::ifstream in(WALLCROSS_TEST_DATA "/conic.txt");
  return make_custom(parse_custom_manifold(in));
}

}  // namespace

TEST(Manifold, JacobianMatchesFiniteDifferences) {
  for (const auto& X : families()) {
    for (const auto& x : sample(X, 40, 3)) {
      const auto& c = X.chart(x.chart);
      const Matrix fd = oracle::fd_jacobian(c.lift, x.u);
      EXPECT_LT((fd - c.jacobian(x.u)).norm(), 1e-6 * (1.0 + fd.norm())) << to_string(X.family());
    }
  }
}

TEST(Manifold, HyperquadricLiesOnQuadric) {
  for (int n : {2, 3, 5}) {
    const auto X = make_hyperquadric(n);
    EXPECT_EQ(X.dim(), n - 1);
    EXPECT_EQ(X.ambient_dim(), n + 1);
    for (const auto& x : sample(X, 50, 1)) {
      const Vector v = X.lift(x);
      EXPECT_NEAR(v(0) * v(0), v.tail(n).squaredNorm(), 1e-12);
    }
  }
}

TEST(Manifold, FramesAreConsistentlyOrientedOnOverlaps) {
  auto check = [](const Submanifold& X) {
    ASSERT_TRUE(X.frames_oriented());
    int overlaps = 0;
    for (const auto& x : sample(X, 200, 7)) {
      const Matrix fa = y_frame(X, x);
      for (int b = 0; b < static_cast<int>(X.charts().size()); ++b) {
        if (b == x.chart) continue;
        auto ub = X.invert_in_chart(b, X.lift(x));
        if (!ub || !X.chart(b).domain.contains(*ub)) continue;
        const Matrix fb = y_frame(X, {b, *ub});
        const Matrix change = fa.colPivHouseholderQr().solve(fb);
        EXPECT_EQ(det_sign(change, 1e-8), 1) << to_string(X.family()) << " charts " << x.chart << "," << b;
        ++overlaps;
      }
    }
    EXPECT_GT(overlaps, 0);
  };
  for (const auto& X : families()) check(X);
  check(conic());
}

TEST(Manifold, LocateAndCanonicalRoundTrip) {
  for (const auto& X : families()) {
    for (const auto& x : sample(X, 30, 9)) {
      const auto p = X.point(x);
      const auto y = X.locate(p);
      ASSERT_TRUE(y.has_value());
      EXPECT_LT(proj_dist(X.point(*y), p), 1e-9);
      EXPECT_LT(proj_dist(X.point(X.canonical(x)), p), 1e-9);
    }
  }
}

TEST(Manifold, RelativeOrientabilityRules) {
  EXPECT_TRUE(is_relatively_orientable(make_hyperquadric(3), 3));
  for (int n = 1; n <= 5; ++n) EXPECT_TRUE(is_relatively_orientable(make_veronese(n), 2));
  EXPECT_TRUE(is_relatively_orientable(make_plucker(2, 3), 7));
  EXPECT_TRUE(is_relatively_orientable(make_plucker(1, 3), 4));
  const auto g22 = make_plucker(2, 2);
  EXPECT_FALSE(is_relatively_orientable(g22, 5));
  EXPECT_FALSE(g22.frames_oriented());
  EXPECT_THROW(is_relatively_orientable(make_veronese(2), 3), Error);
}

TEST(Manifold, PluckerCoordinatesSatisfyTheQuadraticRelation) {
  const auto X = make_plucker(2, 2);
  EXPECT_EQ(X.ambient_dim(), 6);
  EXPECT_EQ(X.dim(), 4);
  for (const auto& x : sample(X, 30, 2)) {
    const Vector p = X.lift(x);  // order 01 02 03 12 13 23
    EXPECT_NEAR(p(0) * p(5) - p(1) * p(4) + p(2) * p(3), 0.0, 1e-10);
    const Matrix basis = plucker_plane(X, x);
    EXPECT_LT(proj_dist(ProjPoint(plucker_coordinates(basis)), ProjPoint(p)), 1e-12);
  }
}

TEST(Manifold, IndexSubsetsAreLexicographic) {
  const auto s = index_subsets(4, 2);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(s[2], (std::vector<int>{0, 3}));
  EXPECT_EQ(s[5], (std::vector<int>{2, 3}));
  EXPECT_EQ(permutation_sign({1, 0, 2}), -1);
  EXPECT_EQ(permutation_sign({2, 0, 1}), 1);
}

TEST(Manifold, CustomConicParses) {
  const auto X = conic();
  EXPECT_EQ(X.family(), Family::custom);
  EXPECT_EQ(X.ambient_dim(), 3);
  EXPECT_EQ(X.dim(), 1);
  for (const auto& x : sample(X, 20, 4)) {
    const Vector v = X.lift(x);
    EXPECT_NEAR(v(0) * v(0) + v(1) * v(1), v(2) * v(2), 1e-9 * v.squaredNorm());
  }
}

TEST(Manifold, CustomFormatErrors) {
  std::istringstream missing("N 3\nm 1\n");
  EXPECT_THROW(parse_custom_manifold(missing), Error);
  std::istringstream unknown("N 3\nm 1\norientable unknown\ncharts 1\nchart -1 1\n1 0\n1 1\n1 2\n");
  const auto X = make_custom(parse_custom_manifold(unknown));
  EXPECT_THROW(is_relatively_orientable(X, 2), Error);
}

TEST(Manifold, ImmersionFailureIsReported) {
  std::istringstream cusp("N 3\nm 1\norientable false\ncharts 1\nchart -1 1\n1 0\n1 2\n1 3\n");
  const auto X = make_custom(parse_custom_manifold(cusp));
  Vector u(1);
  u << 0.0;
  EXPECT_THROW(y_frame(X, {0, u}), Error);
}
