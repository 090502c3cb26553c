#include "wallcross/polynomial.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wallcross;

namespace {

RationalPoly from_roots(const std::vector<Rational>& roots) {
  RationalPoly p = RationalPoly::constant(Rational(1));
  for (const auto& r : roots) p *= RationalPoly{-r, Rational(1)};
  return p;
}

std::vector<double> as_double(const RationalPoly& p) {
  std::vector<double> out;
  for (const auto& c : p.coeffs()) out.push_back(static_cast<double>(c));
  return out;
}

}  // namespace

TEST(Polynomial, ArithmeticAndDivision) {
  const RationalPoly a{Rational(1), Rational(2), Rational(1)};  // (1 + x)^2
  const RationalPoly b{Rational(1), Rational(1)};
  const auto [quot, rem] = RationalPoly::divmod(a, b);
  EXPECT_EQ(quot, b);
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(a.derivative(), (RationalPoly{Rational(2), Rational(2)}));
  EXPECT_EQ(a(Rational(2)), Rational(9));
  EXPECT_EQ(gcd(a, b * RationalPoly{Rational(-3), Rational(1)}), b);
}

TEST(Polynomial, ResultantDetectsCommonRoots) {
  const auto p = from_roots({Rational(1), Rational(2)});
  const auto q = from_roots({Rational(2), Rational(5)});
  const auto r = from_roots({Rational(3), Rational(-1)});
  EXPECT_EQ(resultant(p, q), Rational(0));
  EXPECT_NE(resultant(p, r), Rational(0));
  // Res(x - a, x - b) = b - a up to sign convention; magnitude check
  EXPECT_EQ(abs(resultant(from_roots({Rational(1)}), from_roots({Rational(4)}))), Rational(3));
}

TEST(Polynomial, SturmCountsMatchCompanionOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + trial % 6;
    std::vector<Rational> cs;
    for (int k = 0; k < deg; ++k) cs.emplace_back(c(rng));
    cs.emplace_back(1);
    const RationalPoly p(cs);
    if (has_multiple_root(p)) continue;
    EXPECT_EQ(count_real_roots(p), static_cast<int>(oracle::real_roots(as_double(p)).size())) << p;
  }
}

TEST(Polynomial, IntervalRootCount) {
  const auto p = from_roots({Rational(-3), Rational(1, 2), Rational(2), Rational(7)});
  EXPECT_EQ(count_real_roots(p), 4);
  EXPECT_EQ(count_real_roots(p, Rational(0), Rational(2)), 2);  // (0, 2] holds 1/2 and 2
  EXPECT_EQ(count_real_roots(p, Rational(-10), Rational(-3)), 1);
}

TEST(Polynomial, CauchyIndexMatchesSignedPoleCount) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 1 + trial % 5;
    std::vector<Rational> nc, dc;
    for (int k = 0; k < deg; ++k) {
      nc.emplace_back(c(rng));
      dc.emplace_back(c(rng));
    }
    dc.emplace_back(1);
    const RationalPoly num(nc), den(dc);
    if (has_multiple_root(den) || resultant(num, den) == Rational(0)) continue;
    // oracle: jump of num/den at each real root r of den is sign(num(r) / den'(r))
    int expected = 0;
    const auto dd = as_double(den);
    for (double r : oracle::real_roots(dd))
      expected += oracle::eval(as_double(num), r) / oracle::eval(oracle::derivative(dd), r) > 0 ? 1 : -1;
    EXPECT_EQ(cauchy_index(num, den), expected);
  }
}

TEST(Polynomial, SquarefreeMultiplicities) {
  const auto p = from_roots({Rational(1), Rational(1), Rational(1), Rational(-2), Rational(-2), Rational(5)}) *
                 RationalPoly{Rational(1), Rational(0), Rational(1)};
  const auto f = squarefree_factors(p);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].degree(), 3);  // (x - 5)(x^2 + 1)
  EXPECT_EQ(f[1], from_roots({Rational(-2)}));
  EXPECT_EQ(f[2], from_roots({Rational(1)}));
  EXPECT_EQ(count_real_roots_with_multiplicity(p), 6);
  EXPECT_TRUE(has_multiple_root(p));
}
