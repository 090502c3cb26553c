#pragma once

// Central projections [f]_X : X -> P(W) and their local behaviour.

#include "wallcross/manifold.hpp"
#include "wallcross/numeric.hpp"

namespace wallcross {

/// Scale-invariant cutoff for "x lies on the center of projection".
inline constexpr double kCenterTol = 1e-9;
/// Condition-number ceiling for a fibre point to count as regular.
inline constexpr double kRegularCond = 1e6;

/// A linear map f : V -> W stored in the standard bases.
class ProjectionMap {
 public:
  ProjectionMap() = default;
  explicit ProjectionMap(Matrix f) : f_(std::move(f)) {
    if (f_.size() == 0) throw invalid_input("projection map is empty");
    if (!f_.allFinite()) throw invalid_input("projection map has non-finite entries");
  }

  const Matrix& matrix() const { return f_; }
  int source_dim() const { return static_cast<int>(f_.cols()); }
  int target_dim() const { return static_cast<int>(f_.rows()); }
  double norm() const { return f_.norm(); }

  /// Phi o f for a linear automorphism Phi of W.
  ProjectionMap compose(const Matrix& phi) const { return ProjectionMap(phi * f_); }

 private:
  Matrix f_;
};

inline void check_shapes(const ProjectionMap& f, const Submanifold& X) {
  if (f.source_dim() != X.ambient_dim())
    throw invalid_input("projection source dimension does not match the ambient space");
  if (f.target_dim() != X.dim() + 1) throw invalid_input("projection target must have dimension dim(X) + 1");
}

/// |f x| / (|f| |x|) at the chart point.
inline double center_distance(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  const Vector l = X.lift(x);
  return (f.matrix() * l).norm() / (f.norm() * l.norm());
}

inline ProjPoint project(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  check_shapes(f, X);
  const Vector l = X.lift(x);
  const Vector img = f.matrix() * l;
  if (img.norm() < kCenterTol * f.norm() * l.norm()) throw numerical_error("on center of projection");
  return ProjPoint(img);
}

/// f applied to the Y-frame at x: columns f y0, f y1, ..., f ym.
inline Matrix frame_image(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  return f.matrix() * y_frame(X, x);
}

/// [f]_X is a local diffeomorphism at x iff ker(f) meets Y_x trivially.
inline bool is_local_diffeo(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  check_shapes(f, X);
  return det_sign(frame_image(f, X, x)) != 0;
}

/// Sign of det[f y0, ..., f ym] against the standard orientation of W.
inline int local_degree(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  check_shapes(f, X);
  if (!X.frames_oriented()) throw invalid_input("not relatively orientable");
  const int s = det_sign(frame_image(f, X, x));
  if (s == 0) throw numerical_error("critical point");
  return s;
}

/// Matrix of the differential of [f]_X at x, in the chart basis and the affine
/// chart w -> B^T w / (z . w) of P(W) centred at the image z = [f x], where B
/// is an oriented orthonormal basis of z-perp.
inline Matrix differential(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  const ProjPoint z = project(f, X, x);
  const Vector l = X.lift(x);
  const Matrix b = oriented_complement(z.rep());
  const double scale = z.rep().dot(f.matrix() * l);
  return b.transpose() * f.matrix() * X.jacobian(x) / scale;
}

/// Conditioning of [f]_X at x: the larger of cond(differential) and the
/// condition number of f on an orthonormal basis of Y_x.
inline double regularity_condition(const ProjectionMap& f, const Submanifold& X, const ChartPoint& x) {
  const Matrix fr = y_frame(X, x);
  Eigen::HouseholderQR<Matrix> qr(fr);
  const Matrix q = qr.householderQ() * Matrix::Identity(fr.rows(), fr.cols());
  const double c_frame = condition_number(f.matrix() * q);
  if (X.dim() == 1) return c_frame;
  return std::max(c_frame, condition_number(differential(f, X, x)));
}

}  // namespace wallcross
