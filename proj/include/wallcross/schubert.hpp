#pragma once

// Wronski maps on Grassmannians of polynomial spaces, the quotient Plücker
// map QPl, pole placement and the signed real subspace problem.
//
// Conventions. V0 = R[s]_{<= p+q-1} with monomial basis s^0, ..., s^{p+q-1}.
// wedge^q V0 uses lexicographically ordered index sets. A binary form of
// degree d in (x0, x1) is stored as the polynomial in y = x1/x0 with
// coefficient k attached to x0^{d-k} x1^k; in particular S^{pq} W0^dual
// is identified with R[y]_{<= pq}.

#include "wallcross/checks.hpp"
#include "wallcross/degree.hpp"
#include "wallcross/manifold.hpp"
#include "wallcross/polynomial.hpp"
#include "wallcross/projection.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wallcross {

template <class T>
using PolyMatrix = std::vector<std::vector<Polynomial<T>>>;

/// Determinant of a square matrix of polynomials by cofactor expansion.
template <class T>
Polynomial<T> poly_det(const PolyMatrix<T>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Polynomial<T>::constant(T(1));
  if (n == 1) return m[0][0];
  Polynomial<T> acc;
  for (int r = 0; r < n; ++r) {
    if (m[r][0].is_zero()) continue;
    PolyMatrix<T> minor;
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      minor.emplace_back(m[i].begin() + 1, m[i].end());
    }
    const Polynomial<T> term = m[r][0] * poly_det(minor);
    acc = r % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

/// Inhomogeneous Wronskian det(f_j^{(i)}), 0 <= i < q.
inline RationalPoly wronskian(const std::vector<RationalPoly>& fs) {
  const int q = static_cast<int>(fs.size());
  PolyMatrix<Rational> m(q, std::vector<RationalPoly>(q));
  for (int j = 0; j < q; ++j) {
    RationalPoly d = fs[j];
    for (int i = 0; i < q; ++i) {
      m[i][j] = d;
      d = d.derivative();
    }
  }
  return poly_det(m);
}

struct WronskiOperator {
  int p = 0;
  int q = 0;
  /// (pq + 1) x C(p+q, q): column T holds W(s^{T_1}, ..., s^{T_q}).
  RationalMatrix exact;
  Matrix matrix;
  /// Leading coefficient of W(s^{p+q-1}, ..., s^p).
  BigInt normalization;
};

inline WronskiOperator wronski_operator(int p, int q) {
  if (p < 1 || q < 1) throw invalid_input("wronski operator requires p, q >= 1");
  const auto subsets = index_subsets(p + q, q);
  const int rows = p * q + 1;
  const int cols = static_cast<int>(subsets.size());
  WronskiOperator op;
  op.p = p;
  op.q = q;
  op.exact = rational_matrix(rows, cols);
  op.matrix = Matrix::Zero(rows, cols);
  for (int c = 0; c < cols; ++c) {
    std::vector<RationalPoly> fs;
    for (int a : subsets[c]) fs.push_back(RationalPoly::monomial(a));
    const RationalPoly w = wronskian(fs);
    if (w.degree() >= rows) throw numerical_error("wronskian degree exceeds pq");
    for (int k = 0; k < rows; ++k) {
      op.exact[k][c] = w.coeff(k);
      op.matrix(k, c) = static_cast<double>(w.coeff(k));
    }
  }
  std::vector<RationalPoly> top;
  for (int j = p + q - 1; j >= p; --j) top.push_back(RationalPoly::monomial(j));
  op.normalization = numerator(wronskian(top).leading());
  return op;
}

namespace detail {

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

/// |deg| of the real Wronski map: 0 if p, q are both odd (and at least 2),
/// otherwise the closed-form count I(p, q); 1 when min(p, q) = 1.
inline BigInt eg_count(int p, int q) {
  if (p < 1 || q < 1) throw invalid_input("eg_count requires p, q >= 1");
  if (p % 2 == 0 && q % 2 == 0) throw invalid_input("not relatively orientable");
  if (std::min(p, q) == 1) return 1;
  if (p % 2 == 1 && q % 2 == 1) return 0;
  if (p > q) std::swap(p, q);
  using detail::factorial;
  BigInt num = factorial(p * q / 2);
  for (int i = 1; i <= p - 1; ++i) num *= factorial(i) * factorial(q - i);
  BigInt den = 1;
  for (int k = q - p + 2; k <= q + p - 2; k += 2) den *= factorial(k);
  for (int j = (q - p + 1) / 2; j <= (q + p - 1) / 2; ++j) den *= factorial(j);
  if (num % den != 0) throw numerical_error("eg_count: closed form is not integral");
  return num / den;
}

/// Degree of the complex Grassmannian G_q(C^{p+q}) in its Plücker embedding.
inline BigInt complex_schubert_degree(int p, int q) {
  using detail::factorial;
  BigInt num = factorial(p * q);
  BigInt den = 1;
  for (int i = 0; i < q; ++i) {
    num *= factorial(i);
    den *= factorial(p + i);
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// Quotient data.

/// Kernel map k_s: a (p+q) x p matrix of binary forms, column j of degree
/// degrees[j], total twist nu = sum of degrees.
struct QuotientDatum {
  int p = 0;
  int q = 0;
  std::vector<int> degrees;
  PolyMatrix<Rational> k;

  int nu() const {
    int s = 0;
    for (int d : degrees) s += d;
    return s;
  }

  /// Column span of k at (x0 : x1).
  Matrix evaluate(double x0, double x1) const {
    Matrix m(p + q, p);
    for (int r = 0; r < p + q; ++r)
      for (int c = 0; c < p; ++c) {
        double acc = 0.0;
        const auto& f = k[r][c];
        for (int e = 0; e <= f.degree(); ++e)
          acc += static_cast<double>(f.coeff(e)) * std::pow(x0, degrees[c] - e) * std::pow(x1, e);
        m(r, c) = acc;
      }
    return m;
  }
};

/// Maximal minors of k in lexicographic p-subset order (forms of degree nu).
inline std::vector<RationalPoly> kernel_minors(const QuotientDatum& s) {
  std::vector<RationalPoly> out;
  for (const auto& rows : index_subsets(s.p + s.q, s.p)) {
    PolyMatrix<Rational> sub;
    for (int r : rows) sub.push_back(s.k[r]);
    out.push_back(poly_det(sub));
  }
  return out;
}

/// Exact check that k has rank p at every point of P^1 (over C).
inline void validate(const QuotientDatum& s) {
  if (s.p < 1 || s.q < 1) throw invalid_input("quotient datum requires p, q >= 1");
  if (static_cast<int>(s.k.size()) != s.p + s.q) throw invalid_input("kernel map must have p + q rows");
  if (static_cast<int>(s.degrees.size()) != s.p) throw invalid_input("kernel map needs one degree per column");
  for (const auto& row : s.k) {
    if (static_cast<int>(row.size()) != s.p) throw invalid_input("kernel map must have p columns");
    for (int c = 0; c < s.p; ++c)
      if (row[c].degree() > s.degrees[c]) throw invalid_input("kernel entry exceeds its column degree");
  }
  for (int d : s.degrees)
    if (d < 0) throw invalid_input("negative column degree");
  const auto minors = kernel_minors(s);
  RationalPoly g;
  bool top = false;
  for (const auto& m : minors) {
    g = gcd(g, m);
    top = top || m.coeff(s.nu()) != Rational(0);
  }
  if (g.is_zero()) throw invalid_input("kernel map has rank < p everywhere");
  if (g.degree() > 0) throw invalid_input("kernel map drops rank at a finite point");
  if (!top) throw invalid_input("kernel map drops rank at infinity");
}

/// Sign of the permutation (S, T) for complementary sorted index sets.
inline int duality_sign(const std::vector<int>& S, const std::vector<int>& T) {
  std::vector<int> seq = S;
  seq.insert(seq.end(), T.begin(), T.end());
  return permutation_sign(seq);
}

inline std::vector<int> complement(const std::vector<int>& T, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (std::find(T.begin(), T.end(), i) == T.end()) out.push_back(i);
  return out;
}

struct QplMatrix {
  RationalMatrix exact;
  Matrix matrix;
  ProjectionMap map() const { return ProjectionMap(matrix); }
};

/// wedge^p k_s as a map wedge^q V0 -> S^nu: column T is
/// sign(T^c, T) times the coefficients of the minor on rows T^c.
inline QplMatrix qpl(const QuotientDatum& s) {
  validate(s);
  const int n = s.p + s.q;
  const auto Ts = index_subsets(n, s.q);
  const auto Ss = index_subsets(n, s.p);
  const auto minors = kernel_minors(s);
  const int rows = s.nu() + 1;
  QplMatrix out{rational_matrix(rows, static_cast<int>(Ts.size())), Matrix::Zero(rows, static_cast<int>(Ts.size()))};
  for (std::size_t c = 0; c < Ts.size(); ++c) {
    const auto S = complement(Ts[c], n);
    const auto idx = std::find(Ss.begin(), Ss.end(), S) - Ss.begin();
    const int sign = duality_sign(S, Ts[c]);
    for (int k = 0; k < rows; ++k) {
      const Rational v = Rational(sign) * minors[idx].coeff(k);
      out.exact[k][c] = v;
      out.matrix(k, static_cast<int>(c)) = static_cast<double>(v);
    }
  }
  return out;
}

/// Osculating-flag quotient: k(x) = span{(x0 s - x1)^q s^j : j < p}, the
/// polynomials vanishing to order q at s = x1/x0. Its QPl is proportional
/// to the Wronski operator.
inline QuotientDatum wronski_datum(int p, int q) {
  if (p < 1 || q < 1) throw invalid_input("wronski datum requires p, q >= 1");
  QuotientDatum s;
  s.p = p;
  s.q = q;
  s.degrees.assign(p, q);
  s.k.assign(p + q, std::vector<RationalPoly>(p));
  for (int j = 0; j < p; ++j)
    for (int k = 0; k <= q; ++k) {
      // C(q,k) x0^k s^k (-x1)^{q-k}: the coefficient of s^{k+j} is a form with y-exponent q - k
      Rational c(detail::binomial(q, k));
      if ((q - k) % 2 == 1) c = -c;
      s.k[k + j][j] = RationalPoly::monomial(q - k, c);
    }
  return s;
}

/// Random datum with integer entries of column degree q, retried until valid.
inline QuotientDatum random_quotient_datum(int p, int q, std::mt19937_64& rng, int coeff_bound = 3) {
  std::uniform_int_distribution<int> coef(-coeff_bound, coeff_bound);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    QuotientDatum s;
    s.p = p;
    s.q = q;
    s.degrees.assign(p, q);
    s.k.assign(p + q, std::vector<RationalPoly>(p));
    for (int r = 0; r < p + q; ++r)
      for (int c = 0; c < p; ++c) {
        std::vector<Rational> cs;
        for (int e = 0; e <= q; ++e) cs.emplace_back(coef(rng));
        s.k[r][c] = RationalPoly(cs);
      }
    try {
      validate(s);
      return s;
    } catch (const Error&) {
    }
  }
  throw numerical_error("could not sample a valid quotient datum");
}

// ---------------------------------------------------------------------------
// Pole placement.

/// [det(rho_U o k_s)] with V0/U coordinatized by an orthonormal basis of U-perp.
inline ProjPoint pole_place(const QuotientDatum& s, const Matrix& U) {
  validate(s);
  if (U.rows() != s.p + s.q || U.cols() != s.q) throw invalid_input("U must be a (p+q) x q basis matrix");
  if (rank(U) != s.q) throw invalid_input("U basis is rank deficient");
  const Matrix C = Subspace::from_basis(U).complement().basis();
  PolyMatrix<double> m(s.p, std::vector<RealPoly>(s.p));
  for (int i = 0; i < s.p; ++i)
    for (int j = 0; j < s.p; ++j) {
      RealPoly acc;
      for (int r = 0; r < s.p + s.q; ++r)
        if (C(r, i) != 0.0) acc = acc + C(r, i) * to_real(s.k[r][j]);
      m[i][j] = acc;
    }
  const RealPoly det = poly_det(m);
  const int nu = s.nu();
  Vector v(nu + 1);
  for (int k = 0; k <= nu; ++k) v(k) = det.coeff(k);
  double scale = 1.0;
  for (const auto& row : s.k)
    for (const auto& f : row)
      for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(static_cast<double>(c)));
  if (v.norm() <= 1e-12 * std::pow(scale, s.p)) throw invalid_input("U on center");
  return ProjPoint(v);
}

// ---------------------------------------------------------------------------
// Real degree of the Wronski map and the subspace problem.

inline void require_desk_scale(int p, int q) {
  if (p * q > 6) throw invalid_input("fibre-based degrees are limited to pq <= 6");
}

struct WronskiDegreeReport {
  int degree = 0;
  BigInt eg = 0;
  BigInt complex_degree = 0;
  DegreeCertificate certificate;
  std::vector<Check> checks;
};

inline WronskiDegreeReport wronski_real_degree(int p, int q, const FibreSolveOptions& opts = {}) {
  if (p % 2 == 0 && q % 2 == 0) throw invalid_input("not relatively orientable");
  require_desk_scale(p, q);
  const auto X = make_plucker(p, q);
  const auto op = wronski_operator(p, q);
  WronskiDegreeReport rep;
  rep.certificate = degree(ProjectionMap(op.matrix), X, opts);
  rep.degree = rep.certificate.degree;
  rep.eg = eg_count(p, q);
  rep.complex_degree = complex_schubert_degree(p, q);
  {
    std::ostringstream os;
    os << "|deg| = " << std::abs(rep.degree) << ", I(p,q) = " << rep.eg;
    rep.checks.push_back({"eg-count", BigInt(std::abs(rep.degree)) == rep.eg, os.str()});
  }
  {
    std::ostringstream os;
    os << "deg = " << rep.degree << ", complex degree = " << rep.complex_degree;
    const bool parity = (BigInt(std::abs(rep.degree)) - rep.complex_degree) % 2 == 0;
    rep.checks.push_back({"complex-parity", parity, os.str()});
  }
  return rep;
}

/// The polynomial P_s = prod over the points (a0 : a1) of (a0 x1 - a1 x0).
inline Vector configuration_polynomial(const std::vector<ProjPoint>& config) {
  for (const auto& pt : config)
    if (pt.dim() != 2) throw invalid_input("configuration points must lie in P^1");
  for (std::size_t i = 0; i < config.size(); ++i)
    for (std::size_t j = i + 1; j < config.size(); ++j)
      if (proj_dist(config[i], config[j]) < 1e-9) throw invalid_input("configuration has a repeated point");
  RealPoly P = RealPoly::constant(1.0);
  for (const auto& pt : config) P *= RealPoly{-pt.rep()(1), pt.rep()(0)};
  const int d = static_cast<int>(config.size());
  Vector v(d + 1);
  for (int k = 0; k <= d; ++k) v(k) = P.coeff(k);
  return v;
}

struct SubspaceSolution {
  Matrix basis;  // (p+q) x q
  ChartPoint x;
  int sign = 0;
};

struct SubspaceReport {
  std::vector<SubspaceSolution> solutions;
  int total = 0;
  int degree = 0;
  std::vector<Check> checks;
};

/// Signed count of q-planes U meeting gamma(xi) for every xi in the configuration.
inline SubspaceReport subspace_solve(const QuotientDatum& gamma, const std::vector<ProjPoint>& config,
                                     const FibreSolveOptions& opts = {}) {
  validate(gamma);
  const int p = gamma.p;
  const int q = gamma.q;
  if (p % 2 == 0 && q % 2 == 0) throw invalid_input("not relatively orientable");
  if (gamma.nu() != p * q) throw invalid_input("quotient datum must have twist pq");
  if (static_cast<int>(config.size()) != p * q) throw invalid_input("configuration must have pq points");
  require_desk_scale(p, q);
  const ProjPoint target(configuration_polynomial(config));
  const auto X = make_plucker(p, q);
  const ProjectionMap f = qpl(gamma).map();

  SubspaceReport rep;
  rep.degree = degree(f, X, opts).degree;
  const auto fibre = solve_fibre(f, X, target, opts);
  if (!is_regular_value(f, X, target, fibre, opts.regular_cond)) throw invalid_input("choose generic configuration");

  bool all_meet = true;
  std::ostringstream meet_details;
  for (const auto& x : fibre) {
    SubspaceSolution sol{plucker_plane(X, x), x, local_degree(f, X, x)};
    for (const auto& xi : config) {
      Matrix joint(p + q, p + q);
      joint << sol.basis, gamma.evaluate(xi.rep()(0), xi.rep()(1));
      const Eigen::VectorXd sv = singular_values(joint);
      const double ratio = sv(sv.size() - 1) / sv(0);
      if (ratio > 1e-7) {
        all_meet = false;
        meet_details << "solution misses gamma(xi) (sigma_min/sigma_max = " << ratio << "); ";
      }
    }
    rep.total += sol.sign;
    rep.solutions.push_back(std::move(sol));
  }
  rep.checks.push_back({"solutions-meet-configuration", all_meet,
                        all_meet ? "rank[U | gamma(xi)] < p + q for every solution and point" : meet_details.str()});
  std::ostringstream os;
  os << "signed total " << rep.total << ", degree " << rep.degree;
  rep.checks.push_back({"total-equals-degree", rep.total == rep.degree, os.str()});
  if (rep.total != rep.degree) throw certification_error("subspace total differs from degree: " + os.str());
  return rep;
}

/// Random configuration of k distinct points of P^1.
inline std::vector<ProjPoint> random_configuration(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 3.14159265358979323846);
  std::vector<ProjPoint> out;
  while (static_cast<int>(out.size()) < k) {
    const double a = angle(rng);
    Vector v(2);
    v << std::cos(a), std::sin(a);
    ProjPoint pt(v);
    bool far = true;
    for (const auto& o : out) far = far && proj_dist(o, pt) > 1e-3;
    if (far) out.push_back(pt);
  }
  return out;
}

}  // namespace wallcross
