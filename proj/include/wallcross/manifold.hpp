#pragma once

// Parametrized compact submanifolds X of P(V): charts, homogeneous lifts,
// frames of the bundle Y (the point line plus its first-order deformations)
// and the orientation rule that fixes the sign of every local degree.

#include "wallcross/numeric.hpp"
#include "wallcross/sequence.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wallcross {

enum class Family { hyperquadric, veronese, plucker, custom };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::hyperquadric: return "hyperquadric";
    case Family::veronese: return "veronese";
    case Family::plucker: return "plucker";
    case Family::custom: return "custom";
  }
  return "?";
}

/// Axis-aligned box in R^m.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }
  Vector center() const { return 0.5 * (lo + hi); }

  /// True when u lies inside the box shrunk by `margin` (relative to each side).
  bool contains(const Vector& u, double margin = 0.0) const {
    for (int i = 0; i < dim(); ++i) {
      const double pad = margin * (hi(i) - lo(i));
      if (u(i) < lo(i) + pad || u(i) > hi(i) - pad) return false;
    }
    return true;
  }

  /// Smallest normalized distance to the boundary; negative outside.
  double depth(const Vector& u) const {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim(); ++i) {
      const double w = hi(i) - lo(i);
      d = std::min({d, (u(i) - lo(i)) / w, (hi(i) - u(i)) / w});
    }
    return d;
  }

  Vector at(const std::vector<double>& unit) const {
    Vector u(dim());
    for (int i = 0; i < dim(); ++i) u(i) = lo(i) + unit[i] * (hi(i) - lo(i));
    return u;
  }

  static Box cube(int m, double half) {
    return {Vector::Constant(m, -half), Vector::Constant(m, half)};
  }
};

/// One coordinate patch: lift(u) is a nonzero homogeneous representative of
/// the point with chart coordinates u; jacobian(u) holds its m partials.
struct Chart {
  Box domain;
  std::function<Vector(const Vector&)> lift;
  std::function<Matrix(const Vector&)> jacobian;
  /// Optional closed-form inverse from a representative in V.
  std::function<std::optional<Vector>(const Vector&)> invert;
  /// Sign applied to the first tangent column of the frame.
  int orientation = 1;
};

struct ChartPoint {
  int chart = 0;
  Vector u;
};

/// Result of transporting frames across all sampled chart overlaps.
struct OrientationReport {
  bool consistent = true;
  bool connected = true;
  int overlap_samples = 0;
  std::vector<int> signs;
  std::string diagnostic;
};

class Submanifold {
 public:
  Submanifold(Family family, int ambient_dim, int dim, std::vector<Chart> charts,
              std::map<std::string, int> params = {}, std::optional<bool> declared_orientable = {})
      : family_(family),
        ambient_dim_(ambient_dim),
        dim_(dim),
        charts_(std::move(charts)),
        params_(std::move(params)),
        declared_orientable_(declared_orientable) {
    if (ambient_dim_ < dim_ + 1) throw invalid_input("manifold dimension too large for the ambient space");
    if (charts_.empty()) throw invalid_input("manifold needs at least one chart");
  }

  Family family() const { return family_; }
  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const Chart& chart(int i) const { return charts_.at(i); }
  int param(const std::string& key) const { return params_.at(key); }
  std::optional<bool> declared_orientable() const { return declared_orientable_; }

  /// True once chart orientations have been made consistent.
  bool frames_oriented() const { return frames_oriented_; }
  const OrientationReport& orientation_report() const { return orientation_; }

  Vector lift(const ChartPoint& x) const { return charts_.at(x.chart).lift(x.u); }
  Matrix jacobian(const ChartPoint& x) const { return charts_.at(x.chart).jacobian(x.u); }
  ProjPoint point(const ChartPoint& x) const { return ProjPoint(lift(x)); }

  /// Frame (y0, y1, ..., ym) of Y at x: the lift followed by the chart partials,
  /// first partial multiplied by the chart orientation.
  Matrix frame(const ChartPoint& x) const {
    const Chart& c = charts_.at(x.chart);
    Matrix f(ambient_dim_, dim_ + 1);
    f.col(0) = c.lift(x.u);
    f.rightCols(dim_) = c.jacobian(x.u);
    if (dim_ > 0) f.col(1) *= c.orientation;
    return f;
  }

  /// Chart point representing the projective point `p`, preferring the chart
  /// where it sits deepest inside the domain. Empty when no chart finds it.
  std::optional<ChartPoint> locate(const ProjPoint& p, double tol = 1e-8) const {
    std::optional<ChartPoint> best;
    double best_depth = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(charts_.size()); ++i) {
      auto u = invert_in_chart(i, p.rep());
      if (!u) continue;
      const double d = charts_[i].domain.depth(*u);
      if (d < -1e-12) continue;
      if (proj_dist(ProjPoint(charts_[i].lift(*u)), p) > tol) continue;
      if (d > best_depth) {
        best_depth = d;
        best = ChartPoint{i, *u};
      }
    }
    return best;
  }

  /// Re-expresses x in the chart where it is deepest.
  ChartPoint canonical(const ChartPoint& x) const {
    auto c = locate(point(x), 1e-7);
    return c ? *c : x;
  }

  /// Chart coordinates of the representative v in chart i (closed form when
  /// available, otherwise Gauss-Newton from the best of a few samples).
  std::optional<Vector> invert_in_chart(int i, const Vector& v) const {
    const Chart& c = charts_.at(i);
    if (c.invert) return c.invert(v);
    return newton_invert(c, v);
  }

  void set_orientation(OrientationReport report) {
    orientation_ = std::move(report);
    frames_oriented_ = orientation_.consistent && orientation_.connected;
    if (frames_oriented_)
      for (std::size_t i = 0; i < charts_.size(); ++i) charts_[i].orientation = orientation_.signs[i];
  }

  /// Flips every chart orientation (the one global sign choice per family).
  void flip_orientation() {
    for (auto& c : charts_) c.orientation = -c.orientation;
    for (auto& s : orientation_.signs) s = -s;
  }

  std::vector<Chart>& mutable_charts() { return charts_; }

 private:
  std::optional<Vector> newton_invert(const Chart& c, const Vector& v) const {
    const Vector target = v.normalized();
    const int m = dim_;
    HaltonSequence seq(m, 7);
    Vector best_u = c.domain.center();
    double best_r = std::numeric_limits<double>::infinity();
    const int probes = 16 * m + 16;
    for (int k = 0; k < probes; ++k) {
      const Vector u = k == 0 ? c.domain.center() : c.domain.at(seq.point(k));
      const double r = proj_dist(ProjPoint(c.lift(u)), ProjPoint(target));
      if (r < best_r) {
        best_r = r;
        best_u = u;
      }
    }
    Vector u = best_u;
    for (int it = 0; it < 60; ++it) {
      const Vector l = c.lift(u);
      const double nl = l.norm();
      const Vector xh = l / nl;
      const double s = xh.dot(target) >= 0 ? 1.0 : -1.0;
      const Vector r = xh - s * target;
      const Matrix j = (Matrix::Identity(ambient_dim_, ambient_dim_) - xh * xh.transpose()) * c.jacobian(u) / nl;
      const Vector du = j.colPivHouseholderQr().solve(-r);
      u += du;
      if (!u.allFinite()) return std::nullopt;
      if (du.norm() < 1e-14 * (1.0 + u.norm())) break;
    }
    if (proj_dist(ProjPoint(c.lift(u)), ProjPoint(target)) > 1e-9) return std::nullopt;
    return u;
  }

  Family family_;
  int ambient_dim_;
  int dim_;
  std::vector<Chart> charts_;
  std::map<std::string, int> params_;
  std::optional<bool> declared_orientable_;
  bool frames_oriented_ = false;
  OrientationReport orientation_;
};

/// Frame at x; throws "immersion failure" when it is numerically degenerate.
inline Matrix y_frame(const Submanifold& X, const ChartPoint& x) {
  Matrix f = X.frame(x);
  if (rank(f) < X.dim() + 1) throw numerical_error("immersion failure");
  return f;
}

/// Closed-form relative orientability for a target of dimension target_dim.
inline bool is_relatively_orientable(const Submanifold& X, int target_dim) {
  if (target_dim != X.dim() + 1) throw invalid_input("target dimension must equal dim(X) + 1");
  switch (X.family()) {
    case Family::hyperquadric:
      return true;
    case Family::veronese: {
      // Degree-n Veronese curve into P(W): relatively orientable iff dim(W)(1 - n) is even.
      const int d = X.param("n");
      return (target_dim * (1 - d)) % 2 == 0;
    }
    case Family::plucker: {
      const int p = X.param("p");
      const int q = X.param("q");
      return !(p % 2 == 0 && q % 2 == 0);
    }
    case Family::custom:
      if (!X.declared_orientable()) throw invalid_input("orientability unknown");
      return *X.declared_orientable();
  }
  return false;
}

/// Quasi-uniform deterministic sample, spread round-robin over all charts.
inline std::vector<ChartPoint> sample(const Submanifold& X, int count, std::uint64_t seed) {
  std::vector<ChartPoint> out;
  if (count <= 0) return out;
  const int nc = static_cast<int>(X.charts().size());
  std::vector<HaltonSequence> seqs;
  for (int c = 0; c < nc; ++c) seqs.emplace_back(X.dim(), seed * 1315423911ULL + static_cast<std::uint64_t>(c));
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const int c = k % nc;
    out.push_back({c, X.chart(c).domain.at(seqs[c].point(static_cast<std::uint64_t>(k / nc)))});
  }
  return out;
}

/// Assigns chart orientations by breadth-first transport over sampled
/// overlaps. Every overlap sample contributes the sign of the determinant of
/// the frame-to-frame change of basis; inconsistent signs mean det(Y) is not
/// orientable along some loop.
inline OrientationReport orient_charts(std::vector<Chart>& charts, int dim, int samples_per_chart,
                                       std::uint64_t seed, const Submanifold& X) {
  const int nc = static_cast<int>(charts.size());
  OrientationReport rep;
  rep.signs.assign(nc, 0);
  std::map<std::pair<int, int>, std::set<int>> edges;
  for (int a = 0; a < nc; ++a) {
    HaltonSequence seq(dim, seed + 977ULL * static_cast<std::uint64_t>(a));
    for (int k = 0; k < samples_per_chart; ++k) {
      const Vector ua = charts[a].domain.at(seq.point(k));
      const Vector la = charts[a].lift(ua);
      Matrix fa(la.size(), dim + 1);
      fa.col(0) = la;
      fa.rightCols(dim) = charts[a].jacobian(ua);
      for (int b = a + 1; b < nc; ++b) {
        auto ub = X.invert_in_chart(b, la);
        if (!ub || !charts[b].domain.contains(*ub, 1e-3)) continue;
        Matrix fb(la.size(), dim + 1);
        fb.col(0) = charts[b].lift(*ub);
        fb.rightCols(dim) = charts[b].jacobian(*ub);
        const Matrix change = fa.colPivHouseholderQr().solve(fb);
        const int s = det_sign(change, 1e-8);
        if (s == 0) continue;
        edges[{a, b}].insert(s);
        ++rep.overlap_samples;
      }
    }
  }
  for (const auto& [key, signs] : edges)
    if (signs.size() > 1) {
      rep.consistent = false;
      std::ostringstream os;
      os << "frame orientation flips inside overlap of charts " << key.first << " and " << key.second;
      rep.diagnostic = os.str();
    }
  rep.signs[0] = 1;
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    const int a = todo.front();
    todo.pop();
    for (const auto& [key, signs] : edges) {
      if (signs.size() != 1) continue;
      const int s = *signs.begin();
      int other = -1;
      if (key.first == a) other = key.second;
      if (key.second == a) other = key.first;
      if (other < 0) continue;
      const int want = rep.signs[a] * s;
      if (rep.signs[other] == 0) {
        rep.signs[other] = want;
        todo.push(other);
      } else if (rep.signs[other] != want && rep.consistent) {
        rep.consistent = false;
        std::ostringstream os;
        os << "orientation loop through charts " << a << " and " << other << " reverses the frame";
        rep.diagnostic = os.str();
      }
    }
  }
  for (int c = 0; c < nc; ++c)
    if (rep.signs[c] == 0) {
      rep.connected = false;
      if (rep.diagnostic.empty()) rep.diagnostic = "chart overlap graph is disconnected";
    }
  return rep;
}

namespace detail {

// Runs the overlap transport; aborts when the family is known to be
// relatively orientable but the numerical check disagrees.
inline void orient_or_throw(Submanifold& X, int samples_per_chart) {
  auto& charts = X.mutable_charts();
  OrientationReport rep = orient_charts(charts, X.dim(), samples_per_chart, 20240917ULL, X);
  const bool expected = is_relatively_orientable(X, X.dim() + 1);
  if (expected && !(rep.consistent && rep.connected))
    throw numerical_error("chart overlap consistency failed: " + rep.diagnostic);
  X.set_orientation(std::move(rep));
}

inline int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hyperquadric x0^2 = x1^2 + ... + xn^2, identified with S^{n-1} via [1 : u].

namespace detail {

inline Chart sphere_angle_chart(double lo, double hi) {
  Chart c;
  c.domain = {Vector::Constant(1, lo), Vector::Constant(1, hi)};
  c.lift = [](const Vector& u) {
    Vector v(3);
    v << 1.0, std::cos(u(0)), std::sin(u(0));
    return v;
  };
  c.jacobian = [](const Vector& u) {
    Matrix j(3, 1);
    j << 0.0, -std::sin(u(0)), std::cos(u(0));
    return j;
  };
  c.invert = [lo](const Vector& v) -> std::optional<Vector> {
    if (std::abs(v(0)) < 1e-12) return std::nullopt;
    double th = std::atan2(v(2) / v(0), v(1) / v(0));
    while (th < lo) th += 2.0 * std::numbers::pi;
    while (th >= lo + 2.0 * std::numbers::pi) th -= 2.0 * std::numbers::pi;
    return Vector::Constant(1, th);
  };
  return c;
}

// Stereographic chart of S^{n-1} from the pole -pole_sign * e_n.
inline Chart sphere_stereo_chart(int n, double pole_sign, double half) {
  const int m = n - 1;
  Chart c;
  c.domain = Box::cube(m, half);
  c.lift = [n, m, pole_sign](const Vector& w) {
    const double r2 = w.squaredNorm();
    Vector v(n + 1);
    v(0) = 1.0;
    v.segment(1, m) = 2.0 * w / (1.0 + r2);
    v(n) = pole_sign * (1.0 - r2) / (1.0 + r2);
    return v;
  };
  c.jacobian = [n, m, pole_sign](const Vector& w) {
    const double r2 = w.squaredNorm();
    const double d = 1.0 + r2;
    Matrix j = Matrix::Zero(n + 1, m);
    for (int col = 0; col < m; ++col) {
      for (int i = 0; i < m; ++i) j(1 + i, col) = (i == col ? 2.0 / d : 0.0) - 4.0 * w(i) * w(col) / (d * d);
      j(n, col) = -pole_sign * 4.0 * w(col) / (d * d);
    }
    return j;
  };
  c.invert = [n, m, pole_sign](const Vector& v) -> std::optional<Vector> {
    if (std::abs(v(0)) < 1e-12) return std::nullopt;
    const Vector u = v.segment(1, n) / v(0);
    const double denom = 1.0 + pole_sign * u(n - 1);
    if (denom < 1e-12) return std::nullopt;
    return Vector(u.head(m) / denom);
  };
  return c;
}

}  // namespace detail

inline Submanifold make_hyperquadric(int n) {
  if (n < 2) throw invalid_input("hyperquadric requires n >= 2");
  std::vector<Chart> charts;
  if (n == 2) {
    const double pi = std::numbers::pi;
    charts.push_back(detail::sphere_angle_chart(-0.6 * pi, 0.6 * pi));
    charts.push_back(detail::sphere_angle_chart(0.4 * pi, 1.6 * pi));
  } else {
    charts.push_back(detail::sphere_stereo_chart(n, 1.0, 1.2));
    charts.push_back(detail::sphere_stereo_chart(n, -1.0, 1.2));
  }
  Submanifold X(Family::hyperquadric, n + 1, n - 1, std::move(charts), {{"n", n}});
  detail::orient_or_throw(X, 48 * (n - 1));
  // Anchor: the tangent frame is positively oriented against the outward
  // normal of the sphere, so dropping x0 has degree +2.
  const ChartPoint probe{0, X.chart(0).domain.center()};
  const Matrix f = X.frame(probe);
  if (det_sign(f.bottomRows(n)) < 0) X.flip_orientation();
  return X;
}

// ---------------------------------------------------------------------------
// Rational normal curve t -> (t0^n, t0^{n-1} t1, ..., t1^n).

inline Submanifold make_veronese(int n) {
  if (n < 1) throw invalid_input("veronese requires n >= 1");
  std::vector<Chart> charts(2);
  // chart 0: t0 = 1, t1 = t; chart 1: t0 = s, t1 = 1.
  for (int which = 0; which < 2; ++which) {
    Chart& c = charts[which];
    c.domain = Box::cube(1, 1.5);
    c.lift = [n, which](const Vector& u) {
      Vector v(n + 1);
      for (int k = 0; k <= n; ++k) v(k) = std::pow(u(0), which == 0 ? k : n - k);
      return v;
    };
    c.jacobian = [n, which](const Vector& u) {
      Matrix j(n + 1, 1);
      for (int k = 0; k <= n; ++k) {
        const int e = which == 0 ? k : n - k;
        j(k, 0) = e == 0 ? 0.0 : e * std::pow(u(0), e - 1);
      }
      return j;
    };
    c.invert = [n, which](const Vector& v) -> std::optional<Vector> {
      const double den = which == 0 ? v(0) : v(n);
      if (std::abs(den) < 1e-12 * v.norm()) return std::nullopt;
      return Vector::Constant(1, (which == 0 ? v(1) : v(n - 1)) / den);
    };
  }
  Submanifold X(Family::veronese, n + 1, 1, std::move(charts), {{"n", n}});
  detail::orient_or_throw(X, 64);
  return X;
}

// ---------------------------------------------------------------------------
// Plücker embedding of G_q(R^{p+q}) into P(wedge^q R^{p+q}).

/// Lexicographically ordered k-subsets of {0, ..., n-1}.
inline std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k > n || k < 0) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Maximal minors of a (p+q) x q matrix in lexicographic row-subset order.
inline Vector plucker_coordinates(const Matrix& basis) {
  const int n = static_cast<int>(basis.rows());
  const int q = static_cast<int>(basis.cols());
  const auto subsets = index_subsets(n, q);
  Vector out(static_cast<int>(subsets.size()));
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    Matrix sub(q, q);
    for (int i = 0; i < q; ++i) sub.row(i) = basis.row(subsets[s][i]);
    out(static_cast<int>(s)) = q == 0 ? 1.0 : sub.determinant();
  }
  return out;
}

/// Sign of the permutation sorting `seq` (which has distinct entries).
inline int permutation_sign(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) sign = -sign;
  return sign;
}

namespace detail {

struct PluckerLayout {
  int p, q;
  std::vector<int> identity_rows;  // S
  std::vector<int> free_rows;      // complement, in order
  std::vector<std::vector<int>> subsets;
  std::map<std::vector<int>, int> index_of;
};

inline Matrix plucker_basis(const PluckerLayout& L, const Vector& a) {
  Matrix m = Matrix::Zero(L.p + L.q, L.q);
  for (int j = 0; j < L.q; ++j) m(L.identity_rows[j], j) = 1.0;
  for (int r = 0; r < L.p; ++r)
    for (int j = 0; j < L.q; ++j) m(L.free_rows[r], j) = a(r * L.q + j);
  return m;
}

inline Chart plucker_chart(std::shared_ptr<const PluckerLayout> L, double half) {
  Chart c;
  c.domain = Box::cube(L->p * L->q, half);
  c.lift = [L](const Vector& a) { return plucker_coordinates(plucker_basis(*L, a)); };
  c.jacobian = [L](const Vector& a) {
    const Matrix m = plucker_basis(*L, a);
    const int q = L->q;
    Matrix j = Matrix::Zero(static_cast<int>(L->subsets.size()), L->p * q);
    for (std::size_t s = 0; s < L->subsets.size(); ++s) {
      const auto& rows = L->subsets[s];
      for (int pos = 0; pos < q; ++pos) {
        // derivative of the minor w.r.t. entry (rows[pos], col) is its cofactor
        auto it = std::find(L->free_rows.begin(), L->free_rows.end(), rows[pos]);
        if (it == L->free_rows.end()) continue;
        const int r = static_cast<int>(it - L->free_rows.begin());
        for (int col = 0; col < q; ++col) {
          double cof = 1.0;
          if (q > 1) {
            Matrix minor(q - 1, q - 1);
            for (int i = 0, ii = 0; i < q; ++i) {
              if (i == pos) continue;
              for (int k = 0, kk = 0; k < q; ++k) {
                if (k == col) continue;
                minor(ii, kk++) = m(rows[i], k);
              }
              ++ii;
            }
            cof = minor.determinant();
          }
          if ((pos + col) % 2 == 1) cof = -cof;
          j(static_cast<int>(s), r * q + col) = cof;
        }
      }
    }
    return j;
  };
  c.invert = [L](const Vector& x) -> std::optional<Vector> {
    const int base = L->index_of.at(L->identity_rows);
    const double den = x(base);
    if (std::abs(den) < 1e-10 * x.norm()) return std::nullopt;
    Vector a(L->p * L->q);
    for (int r = 0; r < L->p; ++r)
      for (int j = 0; j < L->q; ++j) {
        std::vector<int> seq = L->identity_rows;
        seq[j] = L->free_rows[r];
        std::vector<int> sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        a(r * L->q + j) = permutation_sign(seq) * x(L->index_of.at(sorted)) / den;
      }
    return a;
  };
  return c;
}

}  // namespace detail

/// Basis matrix (columns span U) of the plane with chart point x on a Plücker manifold.
inline Matrix plucker_plane(const Submanifold& X, const ChartPoint& x) {
  if (X.family() != Family::plucker) throw invalid_input("plucker_plane: not a Plücker manifold");
  const int p = X.param("p");
  const int q = X.param("q");
  const auto subsets = index_subsets(p + q, q);
  detail::PluckerLayout L{p, q, subsets.at(x.chart), {}, subsets, {}};
  for (int i = 0; i < p + q; ++i)
    if (std::find(L.identity_rows.begin(), L.identity_rows.end(), i) == L.identity_rows.end())
      L.free_rows.push_back(i);
  return detail::plucker_basis(L, x.u);
}

inline Submanifold make_plucker(int p, int q) {
  if (p < 1 || q < 1) throw invalid_input("plucker requires p, q >= 1");
  const int n = p + q;
  const auto subsets = index_subsets(n, q);
  const int N = static_cast<int>(subsets.size());
  if (p * q + 1 > N) throw invalid_input("plucker: bad dimensions");
  std::vector<Chart> charts;
  for (const auto& s : subsets) {
    auto L = std::make_shared<detail::PluckerLayout>();
    L->p = p;
    L->q = q;
    L->identity_rows = s;
    for (int i = 0; i < n; ++i)
      if (std::find(s.begin(), s.end(), i) == s.end()) L->free_rows.push_back(i);
    L->subsets = subsets;
    for (int k = 0; k < N; ++k) L->index_of[subsets[k]] = k;
    charts.push_back(detail::plucker_chart(L, 1.5));
  }
  Submanifold X(Family::plucker, N, p * q, std::move(charts), {{"p", p}, {"q", q}});
  detail::orient_or_throw(X, 24 * p * q);
  return X;
}

// ---------------------------------------------------------------------------
// Custom manifolds with polynomial chart lifts.

/// Multivariate polynomial with exact rational coefficients.
struct PolyLift {
  struct Term {
    Rational coeff;
    std::vector<int> exponents;
  };
  std::vector<Term> terms;

  double eval(const Vector& u) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double v = static_cast<double>(t.coeff);
      for (std::size_t i = 0; i < t.exponents.size(); ++i) v *= std::pow(u(static_cast<int>(i)), t.exponents[i]);
      acc += v;
    }
    return acc;
  }

  double partial(const Vector& u, int var) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      const int e = t.exponents[var];
      if (e == 0) continue;
      double v = static_cast<double>(t.coeff) * e;
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        const int ei = static_cast<int>(i) == var ? e - 1 : t.exponents[i];
        v *= std::pow(u(static_cast<int>(i)), ei);
      }
      acc += v;
    }
    return acc;
  }
};

struct CustomChartSpec {
  Box domain;
  std::vector<PolyLift> components;  // N entries
};

struct CustomManifoldSpec {
  int ambient_dim = 0;
  int dim = 0;
  std::optional<bool> orientable;
  std::vector<CustomChartSpec> charts;
};

inline Submanifold make_custom(const CustomManifoldSpec& spec) {
  if (spec.dim < 1) throw invalid_input("custom manifold: m must be >= 1");
  if (spec.charts.empty()) throw invalid_input("custom manifold: no charts");
  std::vector<Chart> charts;
  for (const auto& cs : spec.charts) {
    if (static_cast<int>(cs.components.size()) != spec.ambient_dim)
      throw invalid_input("custom manifold: chart lift must have N components");
    if (cs.domain.dim() != spec.dim) throw invalid_input("custom manifold: chart box must have m sides");
    for (const auto& comp : cs.components)
      for (const auto& t : comp.terms)
        if (static_cast<int>(t.exponents.size()) != spec.dim)
          throw invalid_input("custom manifold: monomial needs m exponents");
    auto comps = std::make_shared<std::vector<PolyLift>>(cs.components);
    Chart c;
    c.domain = cs.domain;
    c.lift = [comps](const Vector& u) {
      Vector v(static_cast<int>(comps->size()));
      for (std::size_t i = 0; i < comps->size(); ++i) v(static_cast<int>(i)) = (*comps)[i].eval(u);
      return v;
    };
    const int m = spec.dim;
    c.jacobian = [comps, m](const Vector& u) {
      Matrix j(static_cast<int>(comps->size()), m);
      for (std::size_t i = 0; i < comps->size(); ++i)
        for (int k = 0; k < m; ++k) j(static_cast<int>(i), k) = (*comps)[i].partial(u, k);
      return j;
    };
    charts.push_back(std::move(c));
  }
  Submanifold X(Family::custom, spec.ambient_dim, spec.dim, std::move(charts), {}, spec.orientable);
  if (!spec.orientable) return X;
  OrientationReport rep = orient_charts(X.mutable_charts(), spec.dim, 48 * spec.dim, 20240917ULL, X);
  if (*spec.orientable && !(rep.consistent && rep.connected))
    throw numerical_error("chart overlap consistency failed: " + rep.diagnostic);
  X.set_orientation(std::move(rep));
  return X;
}

/// Parses the line-oriented custom manifold format:
///
///   N <ambient dim>
///   m <manifold dim>
///   orientable <true|false>
///   charts <count>
///   chart <lo_1> <hi_1> ... <lo_m> <hi_m>
///   <N lines: terms "coeff e_1 ... e_m" separated by ';'>
///
/// Coefficients are exact rationals ("3/4", "-2", "0.5"). '#' starts a comment.
inline CustomManifoldSpec parse_custom_manifold(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  CustomManifoldSpec spec;
  std::size_t li = 0;
  auto expect_key = [&](const std::string& key) {
    if (li >= lines.size()) throw invalid_input("custom manifold: missing '" + key + "'");
    std::istringstream is(lines[li++]);
    std::string k, v;
    is >> k >> v;
    if (k != key) throw invalid_input("custom manifold: expected '" + key + "', got '" + k + "'");
    return v;
  };
  try {
    spec.ambient_dim = std::stoi(expect_key("N"));
    spec.dim = std::stoi(expect_key("m"));
    const std::string o = expect_key("orientable");
    if (o == "true" || o == "1") spec.orientable = true;
    else if (o == "false" || o == "0") spec.orientable = false;
    else if (o != "unknown") throw invalid_input("custom manifold: orientable must be true|false|unknown");
    const int count = std::stoi(expect_key("charts"));
    for (int c = 0; c < count; ++c) {
      if (li >= lines.size()) throw invalid_input("custom manifold: missing chart block");
      std::istringstream head(lines[li++]);
      std::string tag;
      head >> tag;
      if (tag != "chart") throw invalid_input("custom manifold: expected 'chart'");
      CustomChartSpec cs;
      cs.domain.lo.resize(spec.dim);
      cs.domain.hi.resize(spec.dim);
      for (int k = 0; k < spec.dim; ++k) {
        std::string lo, hi;
        if (!(head >> lo >> hi)) throw invalid_input("custom manifold: chart box needs 2m numbers");
        cs.domain.lo(k) = static_cast<double>(parse_rational(lo));
        cs.domain.hi(k) = static_cast<double>(parse_rational(hi));
        if (!(cs.domain.lo(k) < cs.domain.hi(k))) throw invalid_input("custom manifold: empty chart box");
      }
      for (int i = 0; i < spec.ambient_dim; ++i) {
        if (li >= lines.size()) throw invalid_input("custom manifold: missing lift component");
        PolyLift comp;
        std::stringstream terms(lines[li++]);
        for (std::string term; std::getline(terms, term, ';');) {
          std::istringstream ts(term);
          std::string coeff;
          if (!(ts >> coeff)) continue;
          PolyLift::Term t{parse_rational(coeff), {}};
          for (int k = 0; k < spec.dim; ++k) {
            int e;
            if (!(ts >> e) || e < 0) throw invalid_input("custom manifold: bad exponent");
            t.exponents.push_back(e);
          }
          comp.terms.push_back(std::move(t));
        }
        cs.components.push_back(std::move(comp));
      }
      spec.charts.push_back(std::move(cs));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw invalid_input(std::string("custom manifold: ") + e.what());
  }
  return spec;
}

}  // namespace wallcross
