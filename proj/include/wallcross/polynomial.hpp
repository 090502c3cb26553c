#pragma once

// Dense univariate polynomials over a field (double or exact rationals),
// with Sturm sequences and Cauchy indices for the exact case.

#include "wallcross/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

namespace wallcross {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(int degree, const T& coeff = T(1)) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of x^k (zero beyond the degree).
  T coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  /// Coefficient vector padded with zeros to length `size`.
  std::vector<T> padded(int size) const {
    std::vector<T> out(size, T(0));
    for (int k = 0; k < std::min<int>(size, static_cast<int>(c_.size())); ++k) out[k] = c_[k];
    return out;
  }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<int>(k));
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    std::vector<T> c = c_;
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> c = a.c_;
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division; requires exact division of leading coefficients.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw invalid_input("polynomial division by zero");
    std::vector<T> r = num.c_;
    const int dd = den.degree();
    if (num.degree() < dd) return {Polynomial{}, num};
    std::vector<T> quot(num.degree() - dd + 1, T(0));
    for (int k = num.degree(); k >= dd; --k) {
      const T f = r[k] / den.c_[dd];
      quot[k - dd] = f;
      if (f == T(0)) continue;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * den.c_[j];
      r[k] = T(0);
    }
    r.resize(dd);
    return {Polynomial(std::move(quot)), Polynomial(std::move(r))};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    const T lead = leading();
    std::vector<T> c = c_;
    for (auto& v : c) v /= lead;
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

using RationalPoly = Polynomial<Rational>;
using RealPoly = Polynomial<double>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const T c = p.coeff(k);
    if (c == T(0)) continue;
    if (!first) os << " + ";
    os << "(" << c << ")";
    if (k > 0) os << "*x^" << k;
    first = false;
  }
  return os;
}

/// Monic gcd over an exact field.
inline RationalPoly gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto r = RationalPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline RationalPoly to_rational(const std::vector<int>& coeffs) {
  std::vector<Rational> c;
  for (int v : coeffs) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

inline RealPoly to_real(const RationalPoly& p) {
  std::vector<double> c;
  for (const auto& v : p.coeffs()) c.push_back(static_cast<double>(v));
  return RealPoly(std::move(c));
}

/// Resultant via the exact Sylvester determinant.
inline Rational resultant(const RationalPoly& p, const RationalPoly& q) {
  const int m = p.degree();
  const int n = q.degree();
  if (m < 0 || n < 0) return Rational(0);
  if (m == 0 && n == 0) return Rational(1);
  const int size = m + n;
  RationalMatrix s = rational_matrix(size, size);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = p.coeff(m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = q.coeff(n - k);
  return determinant_exact(std::move(s));
}

namespace detail {

inline int sign_at_pos_inf(const RationalPoly& p) { return p.is_zero() ? 0 : sign_of(p.leading()); }
inline int sign_at_neg_inf(const RationalPoly& p) {
  if (p.is_zero()) return 0;
  const int s = sign_of(p.leading());
  return p.degree() % 2 == 0 ? s : -s;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace detail

/// Signed remainder sequence starting with (a, b).
inline std::vector<RationalPoly> sturm_sequence(const RationalPoly& a, const RationalPoly& b) {
  std::vector<RationalPoly> seq{a, b};
  while (!seq.back().is_zero()) {
    auto r = RationalPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

inline std::vector<RationalPoly> sturm_sequence(const RationalPoly& p) {
  return sturm_sequence(p, p.derivative());
}

/// Number of distinct real roots of p (p nonzero).
inline int count_real_roots(const RationalPoly& p) {
  if (p.is_zero()) throw invalid_input("count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  const auto seq = sturm_sequence(p);
  std::vector<int> lo, hi;
  for (const auto& s : seq) {
    lo.push_back(detail::sign_at_neg_inf(s));
    hi.push_back(detail::sign_at_pos_inf(s));
  }
  return detail::variations(lo) - detail::variations(hi);
}

/// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_real_roots(const RationalPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw invalid_input("count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  const auto seq = sturm_sequence(p);
  std::vector<int> sa, sb;
  for (const auto& s : seq) {
    sa.push_back(detail::sign_of(s(a)));
    sb.push_back(detail::sign_of(s(b)));
  }
  return detail::variations(sa) - detail::variations(sb);
}

/// Cauchy index of num/den over the whole real line: the number of jumps
/// from -inf to +inf minus jumps from +inf to -inf at real poles.
inline int cauchy_index(const RationalPoly& num, const RationalPoly& den) {
  if (den.is_zero()) throw invalid_input("cauchy_index: zero denominator");
  const auto r = RationalPoly::divmod(num, den).second;
  if (r.is_zero()) return 0;
  const auto seq = sturm_sequence(den, r);
  std::vector<int> lo, hi;
  for (const auto& s : seq) {
    lo.push_back(detail::sign_at_neg_inf(s));
    hi.push_back(detail::sign_at_pos_inf(s));
  }
  return detail::variations(lo) - detail::variations(hi);
}

/// Yun's square-free factorization: returns (a_1, a_2, ...) with p = c * prod a_i^i.
inline std::vector<RationalPoly> squarefree_factors(const RationalPoly& p) {
  std::vector<RationalPoly> out;
  if (p.degree() <= 0) return out;
  const RationalPoly f = p.monic();
  const RationalPoly fp = f.derivative();
  RationalPoly a = gcd(f, fp);
  RationalPoly b = RationalPoly::divmod(f, a).first;
  RationalPoly c = RationalPoly::divmod(fp, a).first;
  RationalPoly d = c - b.derivative();
  while (b.degree() > 0) {
    const RationalPoly g = gcd(b, d);
    out.push_back(g);
    b = RationalPoly::divmod(b, g).first;
    c = RationalPoly::divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

/// Real roots counted with multiplicity.
inline int count_real_roots_with_multiplicity(const RationalPoly& p) {
  int total = 0;
  const auto factors = squarefree_factors(p);
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].degree() > 0) total += static_cast<int>(i + 1) * count_real_roots(factors[i]);
  return total;
}

/// True when p has a repeated (complex) root.
inline bool has_multiple_root(const RationalPoly& p) {
  if (p.degree() <= 1) return false;
  return gcd(p, p.derivative()).degree() > 0;
}

}  // namespace wallcross
