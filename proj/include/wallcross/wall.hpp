#pragma once

// The wall: maps f whose center P(ker f) meets X. Detection, regularity
// classification and the sign of a transversal crossing.

#include "wallcross/manifold.hpp"
#include "wallcross/projection.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace wallcross {

inline constexpr double kWallTol = 1e-8;

struct WallSearchOptions {
  int samples = 0;  // 0 = automatic
  int candidates = 0;  // 0 = automatic
  double wall_tol = kWallTol;
  double dedup_radius = 1e-6;
  std::uint64_t seed = 1;
};

struct WallVerdict {
  bool on_wall = false;
  /// Indicator in [wall_tol, 10 wall_tol]: too close to call.
  bool ambiguous = false;
  /// min over X of |f x| / (|f| |x|).
  double indicator = 0.0;
  std::optional<ChartPoint> xi;
  /// Distinct points of X inside P(ker f).
  std::vector<ChartPoint> intersections;
  std::optional<bool> regular;
  std::optional<std::string> reason;
};

/// Minimizes |g x| / |x| over X: a fixed quasi-uniform sample cloud for the
/// global search, Levenberg-Marquardt polishing for the local one.
class WallProbe {
 public:
  struct Minimum {
    double value = 0.0;
    ChartPoint x;
  };

  WallProbe(const Submanifold& X, int samples, std::uint64_t seed) : X_(&X) {
    points_ = sample(X, samples, seed);
    lifts_.resize(X.ambient_dim(), static_cast<int>(points_.size()));
    for (std::size_t k = 0; k < points_.size(); ++k) {
      const Vector l = X.lift(points_[k]);
      lifts_.col(static_cast<int>(k)) = l / l.norm();
    }
  }

  static int default_samples(const Submanifold& X) {
    const int per_chart = X.dim() == 1 ? 256 : 160 * X.dim();
    return per_chart * static_cast<int>(X.charts().size());
  }

  const Submanifold& manifold() const { return *X_; }

  /// Polished local minima (sorted by value) from the `keep` best well-separated
  /// samples plus any warm starts.
  std::vector<Minimum> minima(const Matrix& g, int keep, const std::vector<ChartPoint>& warm = {}) const {
    const Eigen::VectorXd vals = (g * lifts_).colwise().norm().transpose();
    std::vector<int> order(vals.size());
    for (int i = 0; i < vals.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals(a) < vals(b); });
    std::vector<ChartPoint> starts = warm;
    std::vector<int> picked;
    const double spread = X_->dim() == 1 ? 0.05 : 0.15;
    for (int idx : order) {
      if (static_cast<int>(picked.size()) >= keep) break;
      bool near = false;
      for (int p : picked) {
        const double d = std::min((lifts_.col(idx) - lifts_.col(p)).norm(), (lifts_.col(idx) + lifts_.col(p)).norm());
        if (d < spread) {
          near = true;
          break;
        }
      }
      if (near) continue;
      picked.push_back(idx);
      starts.push_back(points_[idx]);
    }
    std::vector<Minimum> out;
    for (const auto& s : starts) out.push_back(polish(g, s));
    std::sort(out.begin(), out.end(), [](const Minimum& a, const Minimum& b) { return a.value < b.value; });
    return out;
  }

  /// Levenberg-Marquardt on r(u) = g x(u) / |x(u)|.
  Minimum polish(const Matrix& g, ChartPoint x) const {
    const int N = X_->ambient_dim();
    auto eval = [&](const ChartPoint& p) {
      const Vector l = X_->lift(p);
      return (g * (l / l.norm())).norm();
    };
    double cost = eval(x);
    double lambda = 1e-3;
    bool converged = false;
    for (int it = 0; it < 60 && cost > 0.0 && !converged; ++it) {
      const Vector l = X_->lift(x);
      const double nl = l.norm();
      const Vector xh = l / nl;
      const Vector r = g * xh;
      const Matrix j = g * (Matrix::Identity(N, N) - xh * xh.transpose()) * X_->jacobian(x) / nl;
      const Matrix jtj = j.transpose() * j;
      const Vector jtr = j.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 12; ++tries) {
        Matrix a = jtj;
        a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        const Vector du = a.ldlt().solve(-jtr);
        ChartPoint trial{x.chart, x.u + du};
        if (!trial.u.allFinite()) break;
        const double c = eval(trial);
        if (c < cost) {
          const double step = du.norm();
          x = trial;
          cost = c;
          lambda = std::max(lambda * 0.2, 1e-12);
          improved = true;
          converged = step < 1e-15 * (1.0 + x.u.norm());
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
      // keep the chart point inside a sane region; re-chart when it drifts out
      if (X_->chart(x.chart).domain.depth(x.u) < -0.5) x = X_->canonical(x);
    }
    return {cost, x};
  }

 private:
  const Submanifold* X_;
  std::vector<ChartPoint> points_;
  Matrix lifts_;
};

/// Distinct points (by projective distance) among `pts`.
inline std::vector<ChartPoint> dedup_points(const Submanifold& X, const std::vector<ChartPoint>& pts, double radius) {
  std::vector<ChartPoint> out;
  std::vector<ProjPoint> seen;
  for (const auto& p : pts) {
    const ProjPoint pp = X.point(p);
    bool dup = false;
    for (const auto& s : seen)
      if (proj_dist(s, pp) < radius) {
        dup = true;
        break;
      }
    if (dup) continue;
    seen.push_back(pp);
    out.push_back(X.canonical(p));
  }
  return out;
}

inline WallVerdict locate_wall_point(const ProjectionMap& f, const Submanifold& X, const WallSearchOptions& opts = {}) {
  check_shapes(f, X);
  const int samples = opts.samples > 0 ? opts.samples : WallProbe::default_samples(X);
  const int keep = opts.candidates > 0 ? opts.candidates : 6 + 4 * X.dim();
  const WallProbe probe(X, samples, opts.seed);
  const double fn = f.norm();
  WallVerdict v;
  if (fn == 0.0) {
    v.on_wall = true;
    v.indicator = 0.0;
    v.xi = ChartPoint{0, X.chart(0).domain.center()};
    v.intersections = {*v.xi};
    return v;
  }
  const auto mins = probe.minima(f.matrix(), keep);
  v.indicator = mins.front().value / fn;
  v.on_wall = v.indicator < opts.wall_tol;
  v.ambiguous = !v.on_wall && v.indicator < 10.0 * opts.wall_tol;
  if (v.on_wall) {
    std::vector<ChartPoint> zeros;
    for (const auto& m : mins)
      if (m.value / fn < opts.wall_tol) zeros.push_back(m.x);
    v.intersections = dedup_points(X, zeros, std::max(opts.dedup_radius, 1e-6));
    v.xi = v.intersections.front();
  }
  return v;
}

/// Fills in `regular` and `reason` for a verdict with on_wall set.
inline WallVerdict classify(const ProjectionMap& f0, const Submanifold& X, WallVerdict verdict) {
  if (!verdict.on_wall || !verdict.xi) throw invalid_input("classify: verdict is not on the wall");
  const int n = X.dim() + 1;
  verdict.regular = true;
  verdict.reason.reset();
  if (rank(f0.matrix()) < n) {
    verdict.regular = false;
    verdict.reason = "not-surjective";
  } else if (verdict.intersections.size() > 1) {
    verdict.regular = false;
    verdict.reason = "multiple-intersections";
  } else if (rank(f0.matrix() * y_frame(X, *verdict.xi), 1e-8) != X.dim()) {
    verdict.regular = false;
    verdict.reason = "kernel-meets-Y";
  }
  return verdict;
}

/// Sign of det[fdot y0, f0 y1, ..., f0 ym] at the wall point xi0, columns
/// normalized first. Zero (non-transversal) throws.
inline int crossing_sign(const ProjectionMap& f0, const ChartPoint& xi0, const Matrix& fdot, const Submanifold& X) {
  check_shapes(f0, X);
  if (!X.frames_oriented()) throw invalid_input("not relatively orientable");
  const Matrix fr = y_frame(X, xi0);
  Matrix m = f0.matrix() * fr;
  m.col(0) = fdot * fr.col(0);
  for (int c = 0; c < m.cols(); ++c) {
    const double nc = m.col(c).norm();
    if (nc == 0.0) throw numerical_error("non-transversal crossing");
    m.col(c) /= nc;
  }
  const int s = det_sign(m);
  if (s == 0) throw numerical_error("non-transversal crossing");
  return s;
}

/// The map f - (f x)(x^T) / |x|^2, which kills the lift x of the chart point.
inline ProjectionMap pin_to_wall(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  const Vector l = X.lift(x);
  const Vector xh = l / l.norm();
  return ProjectionMap(f.matrix() - (f.matrix() * xh) * xh.transpose());
}

}  // namespace wallcross
