#pragma once

// Dense linear algebra and projective-point primitives shared by every module.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wallcross {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankCutoff = 1e-10;

/// Base error. The kind decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Kind { invalid_input, numerical, certification };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

inline Error invalid_input(const std::string& what) { return {Error::Kind::invalid_input, what}; }
inline Error numerical_error(const std::string& what) { return {Error::Kind::numerical, what}; }
inline Error certification_error(const std::string& what) {
  return {Error::Kind::certification, what};
}

inline Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

/// Numerical rank with cutoff rel_cutoff * sigma_max.
inline int rank(const Matrix& m, double rel_cutoff = kRankCutoff) {
  const Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_cutoff * sv(0);
  return static_cast<int>((sv.array() > cut).count());
}

/// sigma_max / sigma_min; infinity for singular or empty input.
inline double condition_number(const Matrix& m) {
  const Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0) return std::numeric_limits<double>::infinity();
  const double lo = sv(sv.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / lo;
}

/// A linear subspace of R^ambient_dim stored as an orthonormal column basis.
class Subspace {
 public:
  Subspace() = default;

  /// Orthonormalizes `spanning` (columns). Throws if the columns are not
  /// independent within the rank cutoff.
  static Subspace from_basis(const Matrix& spanning, double rel_cutoff = kRankCutoff) {
    if (spanning.cols() == 0) return Subspace(static_cast<int>(spanning.rows()), Matrix(spanning.rows(), 0));
    Eigen::JacobiSVD<Matrix> svd(spanning, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= rel_cutoff * sv(0))
      throw invalid_input("subspace basis is not linearly independent");
    return Subspace(static_cast<int>(spanning.rows()), svd.matrixU());
  }

  static Subspace from_orthonormal(Matrix basis) {
    const int n = static_cast<int>(basis.rows());
    return Subspace(n, std::move(basis));
  }

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  /// Orthonormal basis of the orthogonal complement.
  Subspace complement() const {
    if (dim() == 0) return Subspace(ambient_dim_, Matrix::Identity(ambient_dim_, ambient_dim_));
    Eigen::JacobiSVD<Matrix> svd(basis_.transpose(), Eigen::ComputeFullV);
    Matrix v = svd.matrixV();
    return Subspace(ambient_dim_, v.rightCols(ambient_dim_ - dim()));
  }

  bool contains(const Vector& v, double tol = 1e-9) const {
    const Vector r = v - basis_ * (basis_.transpose() * v);
    return r.norm() <= tol * std::max(1.0, v.norm());
  }

 private:
  Subspace(int n, Matrix basis) : ambient_dim_(n), basis_(std::move(basis)) {}

  int ambient_dim_ = 0;
  Matrix basis_;
};

/// Null space of m from singular values below rel_cutoff * sigma_max.
/// The zero map has the whole ambient space as kernel.
inline Subspace kernel(const Matrix& m, double rel_cutoff = kRankCutoff) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0 || m.norm() == 0.0)
    return Subspace::from_orthonormal(Matrix::Identity(cols, cols));
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = rel_cutoff * sv(0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return Subspace::from_orthonormal(svd.matrixV().rightCols(cols - r));
}

/// Sign of det(m), or 0 when m is singular by the relative rank cutoff.
inline int det_sign(const Matrix& m, double rel_cutoff = kRankCutoff) {
  if (m.rows() != m.cols()) throw invalid_input("det_sign: matrix is not square");
  if (m.rows() == 0) return 1;
  if (rank(m, rel_cutoff) < m.rows()) return 0;
  const double d = Eigen::PartialPivLU<Matrix>(m).determinant();
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

/// A point of a real projective space, represented by a unit vector
/// identified with its negative.
class ProjPoint {
 public:
  ProjPoint() = default;

  explicit ProjPoint(const Vector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw invalid_input("not a projective point");
    rep_ = v / n;
  }

  const Vector& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()); }

 private:
  Vector rep_;
};

inline ProjPoint proj_normalize(const Vector& v) { return ProjPoint(v); }

/// min(|a - b|, |a + b|) on unit representatives.
inline double proj_dist(const ProjPoint& a, const ProjPoint& b) {
  return std::min((a.rep() - b.rep()).norm(), (a.rep() + b.rep()).norm());
}

/// Orthonormal basis (n x (n-1)) of the complement of the unit vector z,
/// oriented so that det[z | B] > 0.
inline Matrix oriented_complement(const Vector& z) {
  const int n = static_cast<int>(z.size());
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  if (q.col(0).dot(z) < 0) q.col(0) = -q.col(0);
  Matrix b = q.rightCols(n - 1);
  Matrix full(n, n);
  full.col(0) = z;
  full.rightCols(n - 1) = b;
  if (n > 1 && full.determinant() < 0) b.col(0) = -b.col(0);
  return b;
}

// ---------------------------------------------------------------------------
// Exact rational mode

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix rational_matrix(int rows, int cols) {
  return RationalMatrix(rows, std::vector<Rational>(cols, Rational(0)));
}

namespace detail {

inline int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Gaussian elimination; returns rank and the sign of the determinant of the
// leading square block when full rank.
inline std::pair<int, int> eliminate(RationalMatrix a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  int sign = 1;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      sign = 0;
      continue;
    }
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    sign *= sign_of(a[r][c]);
    for (int i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return {r, r == rows && rows == cols ? sign : 0};
}

}  // namespace detail

inline int rank_exact(const RationalMatrix& a) { return detail::eliminate(a).first; }

inline int det_sign_exact(const RationalMatrix& a) {
  if (!a.empty() && a.size() != a[0].size()) throw invalid_input("det_sign_exact: matrix is not square");
  if (a.empty()) return 1;
  return detail::eliminate(a).second;
}

inline Rational determinant_exact(RationalMatrix a) {
  const int n = static_cast<int>(a.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

inline Matrix to_double(const RationalMatrix& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = static_cast<double>(a[i][j]);
  return m;
}

namespace detail {

// cpp_int reads a leading 0 as an octal prefix.
inline BigInt decimal_int(std::string digits) {
  std::size_t i = digits[0] == '+' || digits[0] == '-' ? 1 : 0;
  while (digits.size() > i + 1 && digits[i] == '0') digits.erase(i, 1);
  return BigInt(digits);
}

}  // namespace detail

/// Parses "a/b", an integer, or a plain decimal ("-0.25", "1e-3") exactly.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw invalid_input("empty rational literal");
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const BigInt num = detail::decimal_int(s.substr(0, slash));
      const BigInt den = detail::decimal_int(s.substr(slash + 1));
      if (den == 0) throw invalid_input("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
      neg = s[0] == '-';
      pos = 1;
    }
    int exp10 = 0;
    std::string mant = s.substr(pos);
    if (const auto e = mant.find_first_of("eE"); e != std::string::npos) {
      exp10 = std::stoi(mant.substr(e + 1));
      mant = mant.substr(0, e);
    }
    if (const auto dot = mant.find('.'); dot != std::string::npos) {
      exp10 -= static_cast<int>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos)
      throw invalid_input("bad rational literal '" + text + "'");
    Rational r{detail::decimal_int(mant)};
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(exp10)));
    r = exp10 >= 0 ? r * Rational(scale) : r / Rational(scale);
    return neg ? -r : r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw invalid_input("bad rational literal '" + text + "'");
  }
}

}  // namespace wallcross
