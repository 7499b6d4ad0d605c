#pragma once

#include <Eigen/Dense>

#include "spheresep/config.hpp"

namespace spheresep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point on S^n, stored as a unit vector in R^{n+1}.
class UnitPoint {
 public:
  /// Wraps `coords` without rescaling; throws InvalidArgument when the
  /// norm is off by more than `unit_tol`.
  explicit UnitPoint(Vector coords, double unit_tol = ToleranceConfig{}.unit_tol);

  const Vector& coords() const noexcept { return coords_; }
  Eigen::Index ambient_dim() const noexcept { return coords_.size(); }
  /// Intrinsic dimension n of the sphere S^n this point lives on.
  int sphere_dim() const noexcept { return static_cast<int>(coords_.size()) - 1; }

  double dot(const UnitPoint& other) const { return coords_.dot(other.coords_); }
  double dot(const Vector& v) const { return coords_.dot(v); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  UnitPoint operator-() const;

 private:
  Vector coords_;
};

/// v / |v|. Throws ZeroVector when |v| <= unit_tol.
UnitPoint normalize(const Vector& v, const ToleranceConfig& cfg = {});

/// Orthonormal basis of the tangent space at `base`, one basis vector per
/// column. Coordinates x in R^n denote the tangent-affine point
/// base + basis * x.
class TangentFrame {
 public:
  TangentFrame(UnitPoint base, Matrix basis, const ToleranceConfig& cfg = {});

  const UnitPoint& base() const noexcept { return base_; }
  const Matrix& basis() const noexcept { return basis_; }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }

  /// base + basis * x, a point of the tangent affine plane.
  Vector lift(const Vector& x) const;

 private:
  UnitPoint base_;
  Matrix basis_;
};

/// Deterministic frame: Gram-Schmidt over the standard basis vectors,
/// skipping the one most parallel to `base` (lowest index on ties).
TangentFrame orthonormal_frame(const UnitPoint& base);

/// Gnomonic coordinates of q: the frame coordinates of q / (base.q) - base.
/// Throws OutsideOpenHemisphere when base.q <= margin_tol.
Vector central_project(const TangentFrame& frame, const UnitPoint& q,
                       const ToleranceConfig& cfg = {});

/// Inverse of central_project; every tangent point maps into the open
/// hemisphere around the frame base.
UnitPoint central_unproject(const TangentFrame& frame, const Vector& x);

}  // namespace spheresep
