#include "wallcross/wall.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wallcross;

namespace {

Matrix f0(int n) {
  Matrix f = Matrix::Zero(n, n + 1);
  for (int i = 0; i < n; ++i) f(i, i + 1) = 1.0;
  return f;
}

Matrix f1(int n) {
  Matrix f = Matrix::Zero(n, n + 1);
  for (int i = 0; i < n; ++i) f(i, i) = 1.0;
  return f;
}

// Quadratic form of the circle evaluated on the kernel of g: changes sign
// exactly where the center of projection crosses the conic.
double circle_form(const Matrix& g) {
  const Vector k = oracle::kernel_line(g);
  return k(0) * k(0) - k(1) * k(1) - k(2) * k(2);
}

Matrix lerp(const Matrix& a, const Matrix& b, double t) { return (1.0 - t) * a + t * b; }

}  // namespace

TEST(Wall, OffWallIndicator) {
  const auto X = make_hyperquadric(2);
  const auto v = locate_wall_point(ProjectionMap(f0(2)), X);
  EXPECT_FALSE(v.on_wall);
  EXPECT_FALSE(v.ambiguous);
  // |(x1, x2)| / |(1, x1, x2)| = 1 / sqrt(2) on the circle, divided by |f0| = sqrt(2)
  EXPECT_NEAR(v.indicator, 0.5, 1e-9);
}

TEST(Wall, CrossingMatchesBisection) {
  const auto X = make_hyperquadric(2);
  const Matrix a = f0(2), b = f1(2);
  const double t = oracle::bisect([&](double s) { return circle_form(lerp(a, b, s)); }, 0.05, 0.95);
  const double s = t / (1 - t);
  EXPECT_NEAR(s * s, (std::sqrt(5.0) - 1.0) / 2.0, 1e-12);
  const ProjectionMap g(lerp(a, b, t));
  const auto v = classify(g, X, locate_wall_point(g, X));
  ASSERT_TRUE(v.on_wall);
  EXPECT_TRUE(*v.regular);
  ASSERT_EQ(v.intersections.size(), 1u);
  const Vector k = oracle::kernel_line(g.matrix());
  EXPECT_LT(proj_dist(X.point(*v.xi), ProjPoint(k)), 1e-6);
  EXPECT_EQ(crossing_sign(g, *v.xi, b - a, X), -1);
  EXPECT_FALSE(locate_wall_point(ProjectionMap(lerp(a, b, t - 1e-3)), X).on_wall);
  EXPECT_FALSE(locate_wall_point(ProjectionMap(lerp(a, b, t + 1e-3)), X).on_wall);
}

TEST(Wall, RandomPathsAgreeWithKernelOracle) {
  const auto X = make_hyperquadric(2);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  int found = 0;
  for (int trial = 0; trial < 30 && found < 8; ++trial) {
    Matrix a(2, 3), b(2, 3);
    for (int i = 0; i < 6; ++i) {
      a(i) = gauss(rng);
      b(i) = gauss(rng);
    }
    const auto form = [&](double s) { return circle_form(lerp(a, b, s)); };
    // one sign change on a coarse grid, away from the ends
    std::vector<double> changes;
    for (int k = 0; k < 200; ++k)
      if ((form(k / 200.0) > 0) != (form((k + 1) / 200.0) > 0)) changes.push_back(k / 200.0);
    if (changes.size() != 1) continue;
    const double t = oracle::bisect(form, changes[0], changes[0] + 1.0 / 200.0);
    const ProjectionMap g(lerp(a, b, t));
    auto v = locate_wall_point(g, X);
    ASSERT_TRUE(v.on_wall) << "trial " << trial;
    v = classify(g, X, v);
    EXPECT_TRUE(*v.regular);
    const int s = crossing_sign(g, *v.xi, b - a, X);
    EXPECT_EQ(crossing_sign(g, *v.xi, a - b, X), -s);
    EXPECT_EQ(crossing_sign(g, *v.xi, 3.5 * (b - a), X), s);
    ++found;
  }
  EXPECT_GE(found, 4);
}

TEST(Wall, ClassificationReasons) {
  const auto V = make_veronese(3);
  {
    Matrix f(2, 4);  // kernel is the secant through t = 0 and t = 1
    f << 0, 1, -1, 0, 0, 0, 1, -1;
    const auto v = classify(ProjectionMap(f), V, locate_wall_point(ProjectionMap(f), V));
    EXPECT_FALSE(*v.regular);
    EXPECT_EQ(*v.reason, "multiple-intersections");
    EXPECT_EQ(v.intersections.size(), 2u);
  }
  {
    Matrix f = Matrix::Zero(2, 4);
    f(0, 1) = 1.0;
    const auto v = classify(ProjectionMap(f), V, locate_wall_point(ProjectionMap(f), V));
    EXPECT_EQ(*v.reason, "not-surjective");
  }
  {
    Matrix f = Matrix::Zero(2, 4);  // kernel is the tangent line at t = 0
    f(0, 2) = 1.0;
    f(1, 3) = 1.0;
    WallVerdict v;
    v.on_wall = true;
    v.xi = ChartPoint{0, Vector::Zero(1)};
    v.intersections = {*v.xi};
    v = classify(ProjectionMap(f), V, v);
    EXPECT_FALSE(*v.regular);
    EXPECT_EQ(*v.reason, "kernel-meets-Y");
  }
  EXPECT_THROW(classify(ProjectionMap(f0(2)), make_hyperquadric(2), WallVerdict{}), Error);
}

TEST(Wall, PinnedMapsLieOnTheWall) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (const auto& X : {make_hyperquadric(3), make_veronese(2), make_plucker(1, 2)}) {
    for (const auto& x : sample(X, 5, 3)) {
      Matrix f(X.dim() + 1, X.ambient_dim());
      for (int i = 0; i < f.size(); ++i) f(i) = gauss(rng);
      const ProjectionMap g = pin_to_wall(ProjectionMap(f), X, x);
      EXPECT_LT(center_distance(g, X, x), 1e-14);
      const auto v = locate_wall_point(g, X);
      EXPECT_TRUE(v.on_wall);
      EXPECT_EQ(oracle::error_kind([&] { project(g, X, x); }), Error::Kind::numerical);
    }
  }
}

TEST(Wall, ZeroMapIsOnTheWall) {
  const auto X = make_hyperquadric(2);
  const auto v = locate_wall_point(ProjectionMap(Matrix::Zero(2, 3)), X);
  EXPECT_TRUE(v.on_wall);
  EXPECT_EQ(*classify(ProjectionMap(Matrix::Zero(2, 3)), X, v).reason, "not-surjective");
}
