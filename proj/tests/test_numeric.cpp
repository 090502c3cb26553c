#include "wallcross/numeric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wallcross;

namespace {

Matrix random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (int i = 0; i < m.size(); ++i) m(i) = g(rng);
  return m;
}

}  // namespace

TEST(Numeric, DetSignAgreesWithDeterminant) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k < 20; ++k) {
      const Matrix a = random_matrix(n, n, rng);
      EXPECT_EQ(det_sign(a), a.determinant() > 0 ? 1 : -1);
    }
}

TEST(Numeric, DetSignIsZeroOnSingular) {
  Matrix s(3, 3);
  s << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  EXPECT_EQ(det_sign(s), 0);
  EXPECT_EQ(rank(s), 2);
}

TEST(Numeric, RankAndKernel) {
  std::mt19937_64 rng(3);
  const Matrix a = random_matrix(4, 2, rng) * random_matrix(2, 6, rng);
  EXPECT_EQ(rank(a), 2);
  const Subspace k = kernel(a);
  EXPECT_EQ(k.dim(), 4);
  EXPECT_LT((a * k.basis()).norm(), 1e-10);
}

TEST(Numeric, SubspaceComplementIsOrthogonal) {
  std::mt19937_64 rng(5);
  const Subspace u = Subspace::from_basis(random_matrix(5, 2, rng));
  const Subspace c = u.complement();
  EXPECT_EQ(c.dim(), 3);
  EXPECT_LT((u.basis().transpose() * c.basis()).norm(), 1e-12);
  EXPECT_TRUE(u.contains(u.basis().col(0) * 3.0));
  EXPECT_FALSE(u.contains(c.basis().col(0)));
}

TEST(Numeric, OrientedComplementHasPositiveDeterminant) {
  std::mt19937_64 rng(8);
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k < 10; ++k) {
      const Vector z = random_matrix(n, 1, rng).col(0);
      const Matrix b = oriented_complement(z);
      Matrix full(n, n);
      full << z, b;
      EXPECT_GT(full.determinant(), 0.0);
      EXPECT_LT((b.transpose() * z).norm(), 1e-12 * z.norm());
    }
}

TEST(Numeric, ProjectiveDistanceIgnoresScaleAndSign) {
  Vector v(3);
  v << 1, -2, 0.5;
  EXPECT_NEAR(proj_dist(ProjPoint(v), ProjPoint(-4.0 * v)), 0.0, 1e-15);
  EXPECT_THROW(ProjPoint(Vector::Zero(3)), Error);
}

TEST(Numeric, ExactDeterminantMatchesDouble) {
  RationalMatrix m = rational_matrix(3, 3);
  const int vals[9] = {2, -1, 3, 0, 4, 1, 5, 2, -2};
  for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = Rational(vals[i]);
  Matrix d = to_double(m);
  EXPECT_NEAR(static_cast<double>(determinant_exact(m)), d.determinant(), 1e-9);
  EXPECT_EQ(det_sign_exact(m), d.determinant() > 0 ? 1 : -1);
  EXPECT_EQ(rank_exact(m), 3);
}

TEST(Numeric, ParseRational) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("010/07"), Rational(10, 7));
  EXPECT_EQ(parse_rational("-0017"), Rational(-17));
  EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
  EXPECT_EQ(parse_rational("-2.5e-1"), Rational(-1, 4));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}
