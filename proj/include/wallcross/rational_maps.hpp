#pragma once

// Real rational functions p/q of degree n, p and q monic and coprime, viewed
// as maps P^1 -> P^1. Degrees are computed exactly with Sturm sequences.

#include "wallcross/manifold.hpp"
#include "wallcross/polynomial.hpp"
#include "wallcross/projection.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

namespace wallcross {

struct RationalPair {
  RationalPoly p;
  RationalPoly q;

  int n() const { return p.degree(); }

  /// From the non-leading coefficients a_0..a_{n-1}, b_0..b_{n-1}.
  static RationalPair from_coefficients(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || a.size() != b.size()) throw invalid_input("rational pair needs n >= 1 coefficients for both p and q");
    std::vector<Rational> pa = a, qb = b;
    pa.emplace_back(1);
    qb.emplace_back(1);
    return RationalPair{RationalPoly(pa), RationalPoly(qb)};
  }

  void validate() const {
    if (p.degree() < 1 || p.degree() != q.degree()) throw invalid_input("p and q must have the same degree n >= 1");
    if (p.leading() != Rational(1) || q.leading() != Rational(1)) throw invalid_input("p and q must be monic");
    if (resultant(p, q) == Rational(0)) throw invalid_input("common factor");
  }
};

/// Fixed sequence of candidate values w: 0, then +-a/b in lowest terms by
/// increasing height max(a, b).
class RegularValueSequence {
 public:
  Rational next() {
    while (pending_.empty()) refill();
    const Rational w = pending_.front();
    pending_.erase(pending_.begin());
    return w;
  }

 private:
  void refill() {
    if (height_ == 0) {
      pending_.emplace_back(0);
      height_ = 1;
      return;
    }
    const int h = height_++;
    for (int den = 1; den <= h; ++den)
      for (int num = 1; num <= h; ++num) {
        if (std::max(num, den) != h || boost::integer::gcd(num, den) != 1) continue;
        pending_.emplace_back(num, den);
        pending_.emplace_back(-num, den);
      }
  }

  int height_ = 0;
  std::vector<Rational> pending_;
};

/// True when w is a critical value of p/q (p - wq has a multiple root) or w = 1.
inline bool is_critical_value(const RationalPair& pair, const Rational& w) {
  if (w == Rational(1)) return true;
  return has_multiple_root(pair.p - w * pair.q);
}

/// Degree of p/q at the regular value w: the sum over real roots r of
/// h = p - wq of sign(q(r) h'(r)), i.e. the Cauchy index of q/h.
inline int brockett_degree_at(const RationalPair& pair, const Rational& w) {
  if (w == Rational(1)) throw invalid_input("w = 1 is the value at infinity");
  return cauchy_index(pair.q, pair.p - w * pair.q);
}

struct BrockettCertificate {
  int degree = 0;
  std::vector<Rational> values;
};

inline BrockettCertificate brockett_certificate(const RationalPair& pair) {
  pair.validate();
  BrockettCertificate cert;
  RegularValueSequence seq;
  std::vector<int> degs;
  while (cert.values.size() < 2) {
    const Rational w = seq.next();
    if (is_critical_value(pair, w)) continue;
    cert.values.push_back(w);
    degs.push_back(brockett_degree_at(pair, w));
  }
  if (degs[0] != degs[1]) {
    std::ostringstream os;
    os << "regular values disagree: " << degs[0] << " at w=" << cert.values[0] << ", " << degs[1] << " at w=" << cert.values[1];
    throw certification_error(os.str());
  }
  cert.degree = degs[0];
  return cert;
}

inline int brockett_degree(const RationalPair& pair) { return brockett_certificate(pair).degree; }

inline std::pair<int, int> chamber_of(const RationalPair& pair) {
  const int d = brockett_degree(pair);
  const int n = pair.n();
  return {(n + d) / 2, (n - d) / 2};
}

/// Clears denominators of 1 + sum_{i<=v} 1/(t+i) - sum_{j<=u} 1/(t-j), a
/// representative of degree u - v.
inline RationalPair generator(int u, int v) {
  if (u < 0 || v < 0) throw invalid_input("generator requires u, v >= 0");
  if (u + v == 0) throw invalid_input("generator requires u + v >= 1");
  std::vector<RationalPoly> factors;
  std::vector<int> signs;
  for (int i = 1; i <= v; ++i) {
    factors.push_back(RationalPoly{Rational(i), Rational(1)});
    signs.push_back(1);
  }
  for (int j = 1; j <= u; ++j) {
    factors.push_back(RationalPoly{Rational(-j), Rational(1)});
    signs.push_back(-1);
  }
  RationalPoly q = RationalPoly::constant(Rational(1));
  for (const auto& f : factors) q *= f;
  RationalPoly p = q;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const RationalPoly rest = RationalPoly::divmod(q, factors[k]).first;
    p = p + Rational(signs[k]) * rest;
  }
  return RationalPair{p, q};
}

/// The Veronese curve of degree n and the 2 x (n+1) map whose rows are the
/// homogenizations P(t0,t1) = t1^n p(t0/t1), Q likewise, in the lift's
/// monomial order t0^{n-k} t1^k.
inline std::pair<Submanifold, ProjectionMap> as_central_projection(const RationalPair& pair) {
  pair.validate();
  const int n = pair.n();
  Matrix pi(2, n + 1);
  for (int k = 0; k <= n; ++k) {
    pi(0, k) = static_cast<double>(pair.p.coeff(n - k));
    pi(1, k) = static_cast<double>(pair.q.coeff(n - k));
  }
  return {make_veronese(n), ProjectionMap(pi)};
}

/// Real roots of p - wq counted with multiplicity.
inline int real_fibre_mass(const RationalPair& pair, const Rational& w) {
  if (w == Rational(1)) throw invalid_input("w = 1 is the value at infinity");
  return count_real_roots_with_multiplicity(pair.p - w * pair.q);
}

/// Random coprime monic pair of degree n: with probability 1/2 small integer
/// coefficients over a small denominator, otherwise prescribed real rational
/// roots (which reaches the extreme chambers).
inline RationalPair random_pair(int n, std::mt19937_64& rng) {
  if (n < 1) throw invalid_input("random_pair requires n >= 1");
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> small(-12, 12);
  while (true) {
    RationalPair pair;
    if (coin(rng) == 0) {
      std::vector<Rational> a(n), b(n);
      for (int k = 0; k < n; ++k) {
        a[k] = Rational(small(rng), 4);
        b[k] = Rational(small(rng), 4);
      }
      pair = RationalPair::from_coefficients(a, b);
    } else {
      RationalPoly p = RationalPoly::constant(Rational(1));
      RationalPoly q = p;
      for (int k = 0; k < n; ++k) {
        p *= RationalPoly{Rational(small(rng), 3), Rational(1)};
        q *= RationalPoly{Rational(small(rng), 3), Rational(1)};
      }
      pair = RationalPair{p, q};
    }
    if (resultant(pair.p, pair.q) != Rational(0)) return pair;
  }
}

}  // namespace wallcross
