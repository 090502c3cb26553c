#pragma once

// Paths g_t in Hom(V, W), localization of their wall crossings and the
// difference formula deg g_1 - deg g_0 = 2 * sum of crossing signs.

#include "wallcross/checks.hpp"
#include "wallcross/degree.hpp"
#include "wallcross/manifold.hpp"
#include "wallcross/projection.hpp"
#include "wallcross/wall.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace wallcross {

/// Piecewise-linear path through control points, uniformly parametrized:
/// segment k covers t in [k/K, (k+1)/K].
class HomPath {
 public:
  HomPath() = default;
  HomPath(const ProjectionMap& g0, const ProjectionMap& g1) : HomPath(std::vector<Matrix>{g0.matrix(), g1.matrix()}) {}
  explicit HomPath(std::vector<Matrix> controls) : c_(std::move(controls)) {
    if (c_.size() < 2) throw invalid_input("a path needs at least two control points");
    for (const auto& m : c_)
      if (m.rows() != c_[0].rows() || m.cols() != c_[0].cols()) throw invalid_input("path control points differ in shape");
  }

  int segments() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Matrix>& controls() const { return c_; }
  ProjectionMap start() const { return ProjectionMap(c_.front()); }
  ProjectionMap end() const { return ProjectionMap(c_.back()); }

  int segment_of(double t) const {
    const int K = segments();
    return std::clamp(static_cast<int>(std::floor(t * K)), 0, K - 1);
  }

  Matrix at(double t) const {
    const int K = segments();
    const int k = segment_of(t);
    const double s = t * K - k;
    return (1.0 - s) * c_[k] + s * c_[k + 1];
  }

  /// dg/dt on the segment containing t.
  Matrix velocity(double t) const {
    const int k = segment_of(t);
    return segments() * (c_[k + 1] - c_[k]);
  }

  /// Largest operator 2-norm of dg/dt over segments meeting [a, b].
  double lipschitz(double a, double b) const {
    double best = 0.0;
    for (int k = segment_of(a); k <= segment_of(b); ++k) {
      const Matrix v = segments() * (c_[k + 1] - c_[k]);
      best = std::max(best, singular_values(v)(0));
    }
    return best;
  }

  /// Distance (in t) to the nearest interior control point.
  double kink_distance(double t) const {
    const int K = segments();
    double best = 1.0;
    for (int k = 1; k < K; ++k) best = std::min(best, std::abs(t - static_cast<double>(k) / K));
    return best;
  }

  HomPath reversed() const {
    std::vector<Matrix> r(c_.rbegin(), c_.rend());
    return HomPath(std::move(r));
  }

 private:
  std::vector<Matrix> c_;
};

struct CrossingRecord {
  double t_star = 0.0;
  ChartPoint xi_star;
  ProjPoint point;
  /// +-1 when regular and transversal, 0 otherwise.
  int sign = 0;
  bool regular = false;
  bool transversal = false;
  std::optional<std::string> reason;
};

struct TrackOptions {
  WallSearchOptions wall;
  double h_min = 1.0 / 4096.0;
  double min_separation = 1e-6;
  double kink_tol = 1e-7;
  int retries = 5;
  double perturb_delta = 0.1;
  double lipschitz_safety = 1.1;
  std::uint64_t seed = 1;
};

struct TrackResult {
  std::vector<CrossingRecord> crossings;
  int delta_deg = 0;
  /// The path actually tracked (after any perturbations).
  HomPath path;
  int perturbations = 0;
};

/// Inserts control points near t = 1/3 and 2/3 of the path, each moved by a
/// random offset of Frobenius norm at most delta * |g1 - g0|.
inline HomPath perturb_path(const HomPath& path, std::uint64_t seed, double delta = 0.1) {
  if (delta == 0.0) return path;
  const Matrix g0 = path.start().matrix();
  const Matrix g1 = path.end().matrix();
  const double scale = delta * (g1 - g0).norm();
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto offset = [&]() {
    Matrix e(g0.rows(), g0.cols());
    for (int i = 0; i < e.size(); ++i) e(i) = gauss(rng);
    const double r = unit(rng);
    return Matrix(e * (scale * r / e.norm()));
  };
  std::vector<Matrix> controls{g0};
  for (double t : {1.0 / 3.0, 2.0 / 3.0}) controls.push_back(path.at(t) + offset());
  controls.push_back(g1);
  return HomPath(std::move(controls));
}

namespace detail {

/// Evaluations of the wall indicator w(t) = min_x |g_t x| / |x| with warm starts.
class IndicatorTrace {
 public:
  struct Sample {
    double w = 0.0;
    ChartPoint argmin;
  };

  IndicatorTrace(const HomPath& path, const Submanifold& X, const WallSearchOptions& wopt)
      : path_(path),
        probe_(X, wopt.samples > 0 ? wopt.samples : WallProbe::default_samples(X), wopt.seed),
        keep_(wopt.candidates > 0 ? wopt.candidates : 3 + 2 * X.dim()) {}

  const Sample& operator()(double t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    std::vector<ChartPoint> warm;
    auto hi = cache_.lower_bound(t);
    if (hi != cache_.end()) warm.push_back(hi->second.argmin);
    if (hi != cache_.begin()) warm.push_back(std::prev(hi)->second.argmin);
    const auto mins = probe_.minima(path_.at(t), keep_, warm);
    return cache_.emplace(t, Sample{mins.front().value, mins.front().x}).first->second;
  }

  const WallProbe& probe() const { return probe_; }

 private:
  const HomPath& path_;
  WallProbe probe_;
  int keep_;
  std::map<double, Sample> cache_;
};

struct SquareSolution {
  bool ok = false;
  double t = 0.0;
  ChartPoint x;
};

/// Newton on g_t x(u) = 0 in the unknowns (t, u); its Jacobian
/// [gdot x, g_t dx/du] is invertible exactly at transversal crossings.
inline SquareSolution crossing_newton(const HomPath& path, const Submanifold& X, double t, ChartPoint x) {
  auto merit = [&](double tt, const ChartPoint& p) {
    const Vector l = X.lift(p);
    return (path.at(tt) * l).norm() / (l.norm() * path.at(tt).norm());
  };
  double cur = merit(t, x);
  for (int it = 0; it < 60; ++it) {
    const Matrix g = path.at(t);
    const Vector l = X.lift(x);
    const Vector r = g * l;
    Matrix j(g.rows(), X.dim() + 1);
    j.col(0) = path.velocity(t) * l;
    j.rightCols(X.dim()) = g * X.jacobian(x);
    const Vector d = j.colPivHouseholderQr().solve(-r);
    if (!d.allFinite()) return {};
    double step = 1.0;
    bool moved = false;
    for (int k = 0; k < 16; ++k) {
      const double tt = t + step * d(0);
      ChartPoint trial{x.chart, x.u + step * d.tail(X.dim())};
      if (tt > -0.5 && tt < 1.5) {
        const double m = merit(tt, trial);
        if (std::isfinite(m) && (m < cur || m == 0.0)) {
          t = tt;
          x = trial;
          cur = m;
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved || cur < 1e-15) break;
    if (X.chart(x.chart).domain.depth(x.u) < -1.0) x = X.canonical(x);
  }
  if (!(cur < 1e-11) || t <= 0.0 || t >= 1.0) return {};
  return {true, t, X.canonical(x)};
}

struct TrackAttempt {
  std::vector<CrossingRecord> crossings;
  std::optional<std::string> failure;
};

inline TrackAttempt track_once(const HomPath& path, const Submanifold& X, const TrackOptions& opts) {
  TrackAttempt out;
  IndicatorTrace w(path, X, opts.wall);

  // Lipschitz exclusion: no zero of w in [a, b] once w(a) + w(b) > L (b - a).
  std::vector<std::pair<double, double>> candidates;
  std::vector<std::pair<double, double>> stack{{0.0, 1.0}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const double L = opts.lipschitz_safety * path.lipschitz(a, b);
    if (w(a).w + w(b).w > L * (b - a)) continue;
    if (b - a <= opts.h_min) {
      candidates.emplace_back(a, b);
      continue;
    }
    const double mid = 0.5 * (a + b);
    stack.push_back({mid, b});
    stack.push_back({a, mid});
  }
  std::sort(candidates.begin(), candidates.end());

  // merge touching intervals into clusters
  std::vector<std::pair<double, double>> clusters;
  for (const auto& c : candidates) {
    if (!clusters.empty() && c.first <= clusters.back().second + 1e-15) clusters.back().second = c.second;
    else clusters.push_back(c);
  }

  std::vector<std::pair<double, ChartPoint>> found;
  for (const auto& [a, b] : clusters) {
    const double lo = std::max(0.0, a - opts.h_min);
    const double hi = std::min(1.0, b + opts.h_min);
    const int grid = 16;
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k <= grid; ++k) {
      const double t = lo + (hi - lo) * k / grid;
      pts.emplace_back(w(t).w / path.at(t).norm(), t);
    }
    std::sort(pts.begin(), pts.end());
    bool any = false;
    for (int k = 0; k < 3 && k < static_cast<int>(pts.size()); ++k) {
      const double t = pts[k].second;
      const auto sol = crossing_newton(path, X, t, w(t).argmin);
      if (!sol.ok) continue;
      any = true;
      found.emplace_back(sol.t, sol.x);
    }
    if (!any && pts.front().first < opts.wall.wall_tol) {
      out.failure = "degenerate crossing near t=" + std::to_string(pts.front().second);
      return out;
    }
  }

  // distinct crossings, ordered in t
  std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<std::pair<double, ChartPoint>> uniq;
  for (const auto& f : found) {
    bool dup = false;
    for (const auto& u : uniq)
      if (std::abs(u.first - f.first) < 1e-9 && proj_dist(X.point(u.second), X.point(f.second)) < 1e-6) dup = true;
    if (!dup) uniq.push_back(f);
  }

  for (std::size_t i = 0; i < uniq.size(); ++i) {
    const auto& [t, x] = uniq[i];
    CrossingRecord rec;
    rec.t_star = t;
    rec.xi_star = x;
    rec.point = X.point(x);
    const ProjectionMap g(path.at(t));
    WallVerdict v;
    v.on_wall = true;
    v.indicator = center_distance(g, X, x);
    v.xi = x;
    std::vector<ChartPoint> zeros{x};
    for (const auto& m : w.probe().minima(g.matrix(), 3 + 2 * X.dim(), {x}))
      if (m.value / g.norm() < opts.wall.wall_tol) zeros.push_back(m.x);
    for (std::size_t j = 0; j < uniq.size(); ++j)
      if (j != i && std::abs(uniq[j].first - t) < opts.min_separation) zeros.push_back(uniq[j].second);
    v.intersections = dedup_points(X, zeros, 1e-6);
    v = classify(g, X, v);
    rec.regular = *v.regular;
    rec.reason = v.reason;
    if (rec.regular) {
      try {
        rec.sign = crossing_sign(g, x, path.velocity(t), X);
        rec.transversal = true;
      } catch (const Error&) {
        rec.reason = "non-transversal crossing";
      }
    }
    out.crossings.push_back(rec);
  }

  for (std::size_t i = 0; i < out.crossings.size(); ++i) {
    const auto& c = out.crossings[i];
    std::ostringstream os;
    os << "t=" << c.t_star << ": ";
    if (!c.regular || !c.transversal) out.failure = os.str() + c.reason.value_or("irregular crossing");
    else if (path.kink_distance(c.t_star) < opts.kink_tol) out.failure = os.str() + "crossing at a path corner";
    else if (i > 0 && c.t_star - out.crossings[i - 1].t_star < opts.min_separation)
      out.failure = os.str() + "crossings too close";
    if (out.failure) break;
  }
  return out;
}

}  // namespace detail

inline int signed_sum(const std::vector<CrossingRecord>& crossings) {
  int s = 0;
  for (const auto& c : crossings) s += c.sign;
  return s;
}

/// Locates and signs every wall crossing of the path, perturbing it when a
/// crossing is irregular, non-transversal or otherwise degenerate.
inline TrackResult track(const HomPath& path, const Submanifold& X, const TrackOptions& opts = {}) {
  check_shapes(path.start(), X);
  if (!X.frames_oriented()) throw invalid_input("not relatively orientable");
  for (const auto& g : {path.start(), path.end()}) {
    WallSearchOptions w = opts.wall;
    if (locate_wall_point(g, X, w).on_wall) throw invalid_input("path endpoint is a wall point");
  }
  HomPath current = path;
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    if (attempt > 0) current = perturb_path(path, opts.seed + static_cast<std::uint64_t>(attempt), opts.perturb_delta);
    auto res = detail::track_once(current, X, opts);
    if (res.failure) continue;
    TrackResult out;
    out.crossings = std::move(res.crossings);
    out.delta_deg = 2 * signed_sum(out.crossings);
    out.path = current;
    out.perturbations = attempt;
    return out;
  }
  throw certification_error("could not find generic path");
}

struct DifferenceReport {
  TrackResult tracked;
  int degree_start = 0;
  int degree_end = 0;
  std::vector<Check> checks;
};

/// Tracks the path and compares delta_deg with directly computed endpoint degrees.
inline DifferenceReport verify_difference(const HomPath& path, const Submanifold& X, const TrackOptions& opts = {},
                                          const FibreSolveOptions& fopts = {}) {
  DifferenceReport rep;
  rep.tracked = track(path, X, opts);
  rep.degree_start = degree(path.start(), X, fopts).degree;
  rep.degree_end = degree(path.end(), X, fopts).degree;
  const int direct = rep.degree_end - rep.degree_start;
  std::ostringstream os;
  os << "deg(g1) - deg(g0) = " << rep.degree_end << " - " << rep.degree_start << " = " << direct
     << ", 2 * sum(signs) = " << rep.tracked.delta_deg << " over " << rep.tracked.crossings.size() << " crossings";
  rep.checks.push_back({"difference-formula", direct == rep.tracked.delta_deg, os.str()});
  bool parity = true;
  int running = rep.degree_start;
  for (const auto& c : rep.tracked.crossings) {
    running += 2 * c.sign;
    parity = parity && ((running - rep.degree_start) % 2 == 0);
  }
  rep.checks.push_back({"chamber-parity", parity, "degrees along the path share one parity"});
  rep.checks.push_back({"crossing-count", std::abs(rep.tracked.delta_deg) / 2 <= static_cast<int>(rep.tracked.crossings.size()),
                        "|delta|/2 <= number of crossings"});
  if (direct != rep.tracked.delta_deg) {
    std::ostringstream err;
    err << "difference formula mismatch: " << os.str();
    for (const auto& c : rep.tracked.crossings) err << "; t=" << c.t_star << " sign=" << c.sign;
    throw certification_error(err.str());
  }
  return rep;
}

/// Piecewise-constant degree along the tracked path: (t_start, degree) steps.
inline std::vector<std::pair<double, int>> degree_profile(const TrackResult& tracked, int degree_start) {
  std::vector<std::pair<double, int>> out{{0.0, degree_start}};
  int d = degree_start;
  for (const auto& c : tracked.crossings) {
    d += 2 * c.sign;
    out.emplace_back(c.t_star, d);
  }
  return out;
}

}  // namespace wallcross
