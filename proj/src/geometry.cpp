#include "spheresep/geometry.hpp"

#include <cmath>
#include <string>

namespace spheresep {

UnitPoint::UnitPoint(Vector coords, double unit_tol) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a point on S^n needs at least 2 coordinates");
  }
  const double norm = coords_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > unit_tol) {
    throw Error(ErrorCode::InvalidArgument,
                "coordinates are not unit length (norm " + format_number(norm) + ")");
  }
}

UnitPoint UnitPoint::operator-() const { return UnitPoint(-coords_); }

UnitPoint normalize(const Vector& v, const ToleranceConfig& cfg) {
  const double norm = v.norm();
  if (!(norm > cfg.unit_tol)) {
    throw Error(ErrorCode::ZeroVector, "cannot normalize a vector of norm " + format_number(norm));
  }
  Vector u = v / norm;
  // One correction step; lands within a few ulps of unit length.
  u /= u.norm();
  return UnitPoint(std::move(u), std::max(cfg.unit_tol, 1e-14));
}

TangentFrame::TangentFrame(UnitPoint base, Matrix basis, const ToleranceConfig& cfg)
    : base_(std::move(base)), basis_(std::move(basis)) {
  const Eigen::Index ambient = base_.ambient_dim();
  if (basis_.rows() != ambient || basis_.cols() != ambient - 1) {
    throw Error(ErrorCode::DimensionMismatch, "frame basis must be (n+1) x n");
  }
  const Matrix gram = basis_.transpose() * basis_;
  const Matrix ident = Matrix::Identity(ambient - 1, ambient - 1);
  if ((gram - ident).cwiseAbs().maxCoeff() > cfg.unit_tol * 10 && ambient > 1) {
    throw Error(ErrorCode::InvalidArgument, "frame basis is not orthonormal");
  }
  if (ambient > 1 && (basis_.transpose() * base_.coords()).cwiseAbs().maxCoeff() > cfg.unit_tol * 10) {
    throw Error(ErrorCode::InvalidArgument, "frame basis is not tangent to its base");
  }
}

Vector TangentFrame::lift(const Vector& x) const {
  if (x.size() != basis_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "tangent coordinates have the wrong length");
  }
  return base_.coords() + basis_ * x;
}

TangentFrame orthonormal_frame(const UnitPoint& base) {
  const Vector& b = base.coords();
  const Eigen::Index ambient = b.size();
  Eigen::Index skip = 0;
  for (Eigen::Index i = 1; i < ambient; ++i) {
    if (std::abs(b[i]) > std::abs(b[skip])) skip = i;
  }

  Matrix basis(ambient, ambient - 1);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < ambient; ++i) {
    if (i == skip) continue;
    Vector v = Vector::Unit(ambient, i);
    // Modified Gram-Schmidt, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      v -= b.dot(v) * b;
      for (Eigen::Index j = 0; j < col; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    }
    basis.col(col++) = v / v.norm();
  }
  return TangentFrame(base, std::move(basis));
}

Vector central_project(const TangentFrame& frame, const UnitPoint& q, const ToleranceConfig& cfg) {
  if (q.ambient_dim() != frame.base().ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point and frame live on different spheres");
  }
  const double cosine = frame.base().dot(q);
  if (!(cosine > cfg.margin_tol)) {
    throw Error(ErrorCode::OutsideOpenHemisphere,
                "base.q = " + format_number(cosine) + " is not above margin_tol");
  }
  // The tangent component of q/(base.q) - base is basis^T q / (base.q).
  return frame.basis().transpose() * q.coords() / cosine;
}

UnitPoint central_unproject(const TangentFrame& frame, const Vector& x) {
  return normalize(frame.lift(x));
}

}  // namespace spheresep
