#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spheresep/geometry.hpp"

namespace spheresep {

/// A closed spherical convex body, given as the spherical hull of a finite
/// generator set. Construction checks the structural invariants (nonempty,
/// one sphere, no duplicates); hemisphericity is established lazily through
/// hemisphericity_witness.
class SphericalBody {
 public:
  explicit SphericalBody(std::vector<UnitPoint> generators, const ToleranceConfig& cfg = {});
  /// As above, with a pole already known to see every generator at a
  /// positive dot (checked here).
  SphericalBody(std::vector<UnitPoint> generators, UnitPoint pole, const ToleranceConfig& cfg = {});

  const std::vector<UnitPoint>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }
  int sphere_dim() const noexcept { return generators_.front().sphere_dim(); }
  const std::optional<UnitPoint>& known_pole() const noexcept { return pole_; }

 private:
  std::vector<UnitPoint> generators_;
  std::optional<UnitPoint> pole_;
};

/// Vertices in the coordinates of a tangent frame.
struct TangentPolytope {
  TangentFrame frame;
  std::vector<Vector> vertices;
};

/// Finite vertex set in R^{n+1} standing for its Euclidean convex hull.
struct EuclideanHullBody {
  std::vector<Vector> vertices;
};

/// Result of an LP membership query. `margin` is the L1 residual of the
/// best representation found; members have margin <= margin_tol.
struct Membership {
  bool member = false;
  double margin = 0.0;
};

/// Pole P with min_j P.Q_j >= margin_tol, from the LP
///   maximize t  s.t.  P.Q_j >= t,  -1 <= P_k <= 1,
/// renormalized to the sphere. Throws NotHemispherical otherwise.
UnitPoint hemisphericity_witness(const SphericalBody& body, const ToleranceConfig& cfg = {});

/// Gnomonic image of every generator in `frame`. The frame base must see
/// every generator above margin_tol (OutsideOpenHemisphere otherwise).
TangentPolytope project_body(const SphericalBody& body, const TangentFrame& frame,
                             const ToleranceConfig& cfg = {});

/// Minkowski sum of the vertex set with the eps cross-polytope {+-eps e_k}.
/// eps == 0 returns the input unchanged. Throws NegativeEpsilon.
TangentPolytope fatten(const TangentPolytope& poly, double eps);

/// Spherical body generated by the unprojected vertices. Its frame base is
/// recorded as a known pole. Coincident vertices are merged.
SphericalBody pullback(const TangentPolytope& poly, const ToleranceConfig& cfg = {});

/// Whether q lies in the closed spherical hull of the body, i.e. whether
/// s q = sum lambda_j Q_j for some lambda >= 0 and s >= margin_tol, with
/// the representation normalized by P0 . sum lambda_j Q_j = 1.
Membership spherical_hull_member(const SphericalBody& body, const UnitPoint& q,
                                 const ToleranceConfig& cfg = {});

/// Vertex set united with its image under x -> delta x, 0 < delta < 1.
EuclideanHullBody scale_union_hull(const EuclideanHullBody& body, double delta);

/// Generators as plain vectors of R^{n+1}.
EuclideanHullBody euclidean_hull(const SphericalBody& body);

/// Affine (convex-hull) membership of x in conv(vertices), by LP.
Membership affine_hull_member(std::span<const Vector> vertices, const Vector& x,
                              const ToleranceConfig& cfg = {});

/// Largest rho such that x +- rho e_k all lie in conv(vertices); positive
/// exactly when x is an interior point. Returns a nonpositive value when
/// x is on the boundary or outside.
double interior_margin(std::span<const Vector> vertices, const Vector& x,
                       const ToleranceConfig& cfg = {});

}  // namespace spheresep
