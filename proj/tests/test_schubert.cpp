#include "wallcross/schubert.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wallcross;

namespace {

Matrix random_basis(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < m.size(); ++i) m(i) = g(rng);
  return m;
}

// Coefficients in y of det[U | k(1, y)], by interpolation at nu + 1 nodes.
Vector incidence_polynomial(const QuotientDatum& s, const Matrix& U) {
  const int nu = s.nu();
  Matrix vand(nu + 1, nu + 1);
  Vector vals(nu + 1);
  for (int i = 0; i <= nu; ++i) {
    const double y = -1.0 + 2.0 * i / std::max(nu, 1);
    for (int k = 0; k <= nu; ++k) vand(i, k) = std::pow(y, k);
    Matrix joint(s.p + s.q, s.p + s.q);
    joint << U, s.evaluate(1.0, y);
    vals(i) = joint.determinant();
  }
  return vand.fullPivLu().solve(vals);
}

}  // namespace

TEST(Schubert, MonomialWronskiansMatchVandermonde) {
  const std::vector<std::vector<int>> cases{{0, 1}, {1, 3}, {0, 2, 5}, {1, 2, 4, 6}};
  for (const auto& a : cases) {
    std::vector<RationalPoly> fs;
    for (int e : a) fs.push_back(RationalPoly::monomial(e));
    const auto w = wronskian(fs);
    int deg = -static_cast<int>(a.size() * (a.size() - 1) / 2);
    for (int e : a) deg += e;
    ASSERT_EQ(w.degree(), deg);
    EXPECT_EQ(w.coeff(deg), Rational(oracle::vandermonde(a)));
  }
}

TEST(Schubert, WronskiOperatorShape) {
  const auto op = wronski_operator(2, 3);
  EXPECT_EQ(op.matrix.rows(), 7);
  EXPECT_EQ(op.matrix.cols(), 10);
  EXPECT_EQ(rank_exact(op.exact), 7);
}

TEST(Schubert, EgCountValues) {
  EXPECT_EQ(eg_count(2, 3), 1);
  EXPECT_EQ(eg_count(3, 3), 0);
  EXPECT_EQ(eg_count(2, 5), 2);
  EXPECT_EQ(eg_count(2, 7), 5);
  EXPECT_EQ(eg_count(3, 4), 2);
  EXPECT_EQ(eg_count(4, 5), 12);
  EXPECT_EQ(eg_count(1, 5), 1);
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; q <= 5; ++q) {
      if (p % 2 == 0 && q % 2 == 0) {
        EXPECT_THROW(eg_count(p, q), Error);
        continue;
      }
      EXPECT_EQ(eg_count(p, q), eg_count(q, p));
      // same parity as the complex count
      EXPECT_EQ((complex_schubert_degree(p, q) - eg_count(p, q)) % 2, 0) << p << "," << q;
    }
  EXPECT_THROW(eg_count(0, 3), Error);
}

TEST(Schubert, ComplexDegreeIsTheHookFormula) {
  // number of standard Young tableaux of the q x p rectangle
  auto hook = [](int p, int q) {
    long long num = oracle::factorial(p * q);
    long long den = 1;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < p; ++j) den *= (p - j) + (q - i) - 1;
    return num / den;
  };
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) EXPECT_EQ(complex_schubert_degree(p, q), hook(p, q));
  EXPECT_EQ(complex_schubert_degree(2, 3), 5);
}

TEST(Schubert, QplOfWronskiDatumIsTheWronskiOperator) {
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const auto Q = qpl(wronski_datum(p, q)).matrix;
      const auto W = wronski_operator(p, q).matrix;
      ASSERT_EQ(Q.rows(), W.rows());
      ASSERT_EQ(Q.cols(), W.cols());
      const double r = Q.norm() / W.norm();
      EXPECT_LT(std::min((Q - r * W).norm(), (Q + r * W).norm()), 1e-9 * Q.norm()) << p << "," << q;
    }
}

TEST(Schubert, DualitySigns) {
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const int n = p + q;
      for (const auto& T : index_subsets(n, q)) {
        const auto S = complement(T, n);
        EXPECT_EQ(duality_sign(S, T) * duality_sign(T, S), (p * q) % 2 == 0 ? 1 : -1);
      }
    }
}

TEST(Schubert, PolePlacementMatchesIncidenceOracle) {
  std::mt19937_64 rng(8);
  for (auto [p, q] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
    const auto s = random_quotient_datum(p, q, rng);
    const auto Q = qpl(s);
    for (int k = 0; k < 20; ++k) {
      const Matrix U = random_basis(p + q, q, rng);
      const ProjPoint pp = pole_place(s, U);
      EXPECT_LT(proj_dist(pp, ProjPoint(incidence_polynomial(s, U))), 1e-9);
      EXPECT_LT(proj_dist(pp, ProjPoint(Q.matrix * plucker_coordinates(U))), 1e-10);
    }
  }
}

TEST(Schubert, PolePlacementOnCenter) {
  // k(x) = span(x0, x1)
  QuotientDatum s;
  s.p = 1;
  s.q = 1;
  s.degrees = {1};
  s.k = {{RationalPoly{Rational(1)}}, {RationalPoly{Rational(0), Rational(1)}}};
  validate(s);
  Matrix U(2, 1);
  U << 1, 0;
  // det[U | k] = x1: a root at (1 : 0)
  const ProjPoint pp = pole_place(s, U);
  EXPECT_NEAR(std::abs(pp.rep()(0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pp.rep()(1)), 1.0, 1e-15);

  QuotientDatum c;  // constant kernel: U equal to it is on the center
  c.p = 1;
  c.q = 1;
  c.degrees = {0};
  c.k = {{RationalPoly{Rational(1)}}, {RationalPoly{Rational(2)}}};
  Matrix V(2, 1);
  V << 1, 2;
  EXPECT_EQ(oracle::error_kind([&] { pole_place(c, V); }), Error::Kind::invalid_input);
}

TEST(Schubert, DatumValidation) {
  QuotientDatum s;
  s.p = 1;
  s.q = 1;
  s.degrees = {1};
  // (x1, x1) vanishes at (1 : 0)
  s.k = {{RationalPoly{Rational(0), Rational(1)}}, {RationalPoly{Rational(0), Rational(1)}}};
  EXPECT_THROW(validate(s), Error);
  // (x0, x0) drops rank at infinity
  s.k = {{RationalPoly{Rational(1)}}, {RationalPoly{Rational(1)}}};
  EXPECT_THROW(validate(s), Error);
  s.k = {{RationalPoly{Rational(1)}}};
  EXPECT_THROW(validate(s), Error);
  EXPECT_NO_THROW(validate(wronski_datum(2, 3)));
}

TEST(Schubert, WronskiRealDegrees) {
  for (auto [p, q, want] : {std::tuple{1, 1, 1}, std::tuple{1, 2, 1}, std::tuple{2, 1, 1}, std::tuple{2, 3, 1}}) {
    const auto rep = wronski_real_degree(p, q);
    EXPECT_EQ(std::abs(rep.degree), want) << p << "," << q;
    EXPECT_TRUE(all_pass(rep.checks));
  }
  EXPECT_EQ(oracle::error_kind([] { wronski_real_degree(2, 2); }), Error::Kind::invalid_input);
  EXPECT_EQ(oracle::error_kind([] { wronski_real_degree(1, 7); }), Error::Kind::invalid_input);
}

TEST(Schubert, SubspaceProblemOneTwo) {
  const auto gamma = wronski_datum(1, 2);
  std::vector<ProjPoint> config;
  for (double y : {-1.0, 0.5}) {
    Vector v(2);
    v << 1.0, y;
    config.emplace_back(v);
  }
  const auto rep = subspace_solve(gamma, config);
  EXPECT_TRUE(all_pass(rep.checks));
  ASSERT_EQ(rep.solutions.size(), 1u);
  EXPECT_EQ(rep.total, rep.degree);
  // the unique plane meets both osculating lines
  for (const auto& xi : config) {
    Matrix joint(3, 3);
    joint << rep.solutions[0].basis, gamma.evaluate(xi.rep()(0), xi.rep()(1));
    EXPECT_NEAR(joint.determinant() / joint.norm(), 0.0, 1e-8);
  }
  const auto dup = std::vector<ProjPoint>{config[0], config[0]};
  EXPECT_EQ(oracle::error_kind([&] { subspace_solve(gamma, dup); }), Error::Kind::invalid_input);
  EXPECT_EQ(oracle::error_kind([&] { subspace_solve(gamma, {config[0]}); }), Error::Kind::invalid_input);
}

TEST(Schubert, SubspaceTotalsOnRandomConfigurations) {
  std::mt19937_64 rng(12);
  for (auto [p, q] : {std::pair{1, 3}, std::pair{2, 1}}) {
    const auto gamma = wronski_datum(p, q);
    const auto rep = subspace_solve(gamma, random_configuration(p * q, rng));
    EXPECT_EQ(rep.total, rep.degree);
    EXPECT_EQ(std::abs(rep.degree), 1);
    EXPECT_GE(static_cast<int>(rep.solutions.size()), 1);
    EXPECT_EQ((static_cast<int>(rep.solutions.size()) - rep.total) % 2, 0);
  }
}
