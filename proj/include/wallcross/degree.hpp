#pragma once

// Global degree of [f]_X by summing local degrees over regular fibres.
//
// Fibres are found by multi-start damped Newton on the chart equations
// B^T f x(u) = 0, where B spans the complement of the target line. Fibre
// completeness is heuristic; it is cross-checked by requiring the signed
// count to agree over several independent regular targets.

#include "wallcross/checks.hpp"
#include "wallcross/manifold.hpp"
#include "wallcross/parallel.hpp"
#include "wallcross/projection.hpp"
#include "wallcross/sequence.hpp"
#include "wallcross/wall.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

namespace wallcross {

struct FibreSolveOptions {
  int starts = 0;  // total Newton starts; 0 = automatic from the manifold
  double newton_tol = 1e-10;
  double dedup_radius = 1e-6;
  int max_iters = 100;
  std::uint64_t seed = 1;
  int targets = 5;
  int max_target_attempts = 50;
  double regular_cond = kRegularCond;
  bool check_wall = true;
};

inline int default_starts(const Submanifold& X) {
  const int m = X.dim();
  const int per_chart = m == 1 ? 48 : std::max(160, 40 * m);
  return per_chart * static_cast<int>(X.charts().size());
}

struct FibrePoint {
  ChartPoint x;
  int local_degree = 0;
};

struct DegreeCertificate {
  int degree = 0;
  std::vector<ProjPoint> targets;
  std::vector<std::vector<FibrePoint>> fibres;
  bool unanimous = true;
  int rejected_targets = 0;

  int max_fibre_size() const {
    std::size_t m = 0;
    for (const auto& f : fibres) m = std::max(m, f.size());
    return static_cast<int>(m);
  }
};

namespace detail {

inline bool chart_less(const ChartPoint& a, const ChartPoint& b) {
  if (a.chart != b.chart) return a.chart < b.chart;
  for (int i = 0; i < a.u.size(); ++i)
    if (a.u(i) != b.u(i)) return a.u(i) < b.u(i);
  return false;
}

struct NewtonOutcome {
  bool ok = false;
  ChartPoint x;
};

inline NewtonOutcome fibre_newton(const Matrix& bf, const Matrix& f, double fnorm, const Submanifold& X, ChartPoint x,
                                  const FibreSolveOptions& opts) {
  auto merit = [&](const ChartPoint& p) {
    const Vector l = X.lift(p);
    return (bf * l).norm() / l.norm();
  };
  double cur = merit(x);
  for (int it = 0; it < opts.max_iters; ++it) {
    const Vector l = X.lift(x);
    const Vector r = bf * l;
    const Matrix j = bf * X.jacobian(x);
    const Vector du = j.colPivHouseholderQr().solve(-r);
    if (!du.allFinite()) return {};
    double step = 1.0;
    bool moved = false;
    for (int k = 0; k < 12; ++k) {
      ChartPoint trial{x.chart, x.u + step * du};
      const double m = merit(trial);
      if (std::isfinite(m) && (m < cur || m == 0.0)) {
        x = trial;
        cur = m;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved || step * du.norm() < 1e-15 * (1.0 + x.u.norm())) break;
    if (X.chart(x.chart).domain.depth(x.u) < -2.0) return {};
  }
  if (cur / fnorm > opts.newton_tol) return {};
  if (X.chart(x.chart).domain.depth(x.u) < -0.25) return {};
  const Vector l = X.lift(x);
  if ((f * l).norm() < kCenterTol * fnorm * l.norm()) return {};
  return {true, x};
}

}  // namespace detail

/// Points of X mapping to the target line zeta under [f]_X.
inline std::vector<ChartPoint> solve_fibre(const ProjectionMap& f, const Submanifold& X, const ProjPoint& zeta,
                                           const FibreSolveOptions& opts = {}) {
  check_shapes(f, X);
  if (zeta.dim() != f.target_dim()) throw invalid_input("target point has the wrong dimension");
  const Matrix b = oriented_complement(zeta.rep());
  const Matrix bf = b.transpose() * f.matrix();
  const double fnorm = f.norm();
  const int total = opts.starts > 0 ? opts.starts : default_starts(X);
  const auto starts = sample(X, total, opts.seed);
  std::vector<detail::NewtonOutcome> results(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int i) {
    results[i] = detail::fibre_newton(bf, f.matrix(), fnorm, X, starts[i], opts);
  });
  std::vector<ChartPoint> found;
  for (const auto& r : results)
    if (r.ok) found.push_back(r.x);
  auto out = dedup_points(X, found, opts.dedup_radius);
  std::sort(out.begin(), out.end(), detail::chart_less);
  return out;
}

inline bool is_regular_value(const ProjectionMap& f, const Submanifold& X, const ProjPoint& /*zeta*/,
                             const std::vector<ChartPoint>& fibre, double max_cond = kRegularCond) {
  for (const auto& x : fibre) {
    if (!is_local_diffeo(f, X, x)) return false;
    if (!(regularity_condition(f, X, x) < max_cond)) return false;
  }
  return true;
}

inline void require_orientable(const Submanifold& X) {
  if (!is_relatively_orientable(X, X.dim() + 1) || !X.frames_oriented())
    throw invalid_input("not relatively orientable");
}

namespace detail {

inline DegreeCertificate degree_once(const ProjectionMap& f, const Submanifold& X, const FibreSolveOptions& opts) {
  DegreeCertificate cert;
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = f.target_dim();
  int attempts = 0;
  while (static_cast<int>(cert.targets.size()) < opts.targets) {
    if (attempts++ >= opts.max_target_attempts) throw numerical_error("could not find regular value");
    Vector z(n);
    for (int i = 0; i < n; ++i) z(i) = gauss(rng);
    const ProjPoint zeta(z);
    FibreSolveOptions o = opts;
    o.seed = opts.seed + 7919ULL * static_cast<std::uint64_t>(attempts);
    const auto fibre = solve_fibre(f, X, zeta, o);
    if (!is_regular_value(f, X, zeta, fibre, opts.regular_cond)) {
      ++cert.rejected_targets;
      continue;
    }
    std::vector<FibrePoint> pts;
    int sum = 0;
    for (const auto& x : fibre) {
      const int s = local_degree(f, X, x);
      sum += s;
      pts.push_back({x, s});
    }
    if (cert.targets.empty()) cert.degree = sum;
    else if (sum != cert.degree) cert.unanimous = false;
    cert.targets.push_back(zeta);
    cert.fibres.push_back(std::move(pts));
  }
  return cert;
}

}  // namespace detail

inline int fibre_sum(const std::vector<FibrePoint>& fibre) {
  int s = 0;
  for (const auto& p : fibre) s += p.local_degree;
  return s;
}

/// Degree of [f]_X relative to the frame orientation of X.
inline DegreeCertificate degree(const ProjectionMap& f, const Submanifold& X, const FibreSolveOptions& opts = {}) {
  check_shapes(f, X);
  require_orientable(X);
  if (opts.check_wall) {
    WallSearchOptions w;
    w.seed = opts.seed;
    const auto v = locate_wall_point(f, X, w);
    if (v.on_wall) throw invalid_input("wall point");
  }
  auto cert = detail::degree_once(f, X, opts);
  if (cert.unanimous) return cert;
  FibreSolveOptions more = opts;
  more.starts = 4 * (opts.starts > 0 ? opts.starts : default_starts(X));
  more.seed = opts.seed + 1;
  cert = detail::degree_once(f, X, more);
  if (!cert.unanimous) {
    std::ostringstream os;
    os << "incomplete fibres: signed counts";
    for (const auto& fb : cert.fibres) os << ' ' << fibre_sum(fb);
    throw certification_error(os.str());
  }
  return cert;
}

/// Checks |deg_R| <= mass <= deg_C and the two mod-2 congruences for every
/// supplied real fibre mass (fibre size counted with multiplicity).
inline std::vector<Check> estimates_check(int real_deg, const std::vector<int>& fibre_masses, int complex_deg) {
  std::vector<Check> out;
  auto parity = [](int a, int b) { return ((a - b) % 2 + 2) % 2 == 0; };
  {
    std::ostringstream os;
    os << "deg_R=" << real_deg << " deg_C=" << complex_deg;
    out.push_back({"degree-parity", parity(real_deg, complex_deg), os.str()});
  }
  for (std::size_t i = 0; i < fibre_masses.size(); ++i) {
    const int mass = fibre_masses[i];
    std::ostringstream os;
    os << "|" << real_deg << "| <= " << mass << " <= " << complex_deg;
    const std::string tag = "[" + std::to_string(i) + "]";
    out.push_back({"lower-bound" + tag, std::abs(real_deg) <= mass, os.str()});
    out.push_back({"upper-bound" + tag, mass <= complex_deg, os.str()});
    out.push_back({"mass-parity" + tag, parity(real_deg, mass), os.str()});
  }
  return out;
}

}  // namespace wallcross
