#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spheresep/convexity.hpp"

namespace spheresep {

/// The hyperplane {x : normal . x = offset} of R^{n+1}.
struct Hyperplane {
  UnitPoint normal;
  double offset;
};

enum class CertificateKind { Disjoint, Intersecting };

/// Outcome of a separation query.
///
/// Disjoint: `witness` sees body 1 at dot >= margin and body 2 at dot
/// <= -margin, with margin > 0.
/// Intersecting: `common_point` = normalize(sum lambda_j Q_j)
/// = normalize(sum mu_k R_k), lambda, mu >= 0.
struct SeparationCertificate {
  CertificateKind kind = CertificateKind::Intersecting;
  std::optional<UnitPoint> witness;
  double margin = 0.0;
  std::optional<UnitPoint> common_point;
  std::vector<double> lambda;
  std::vector<double> mu;
};

/// Record of the constructive separation run. Offsets of
/// `hyperplanes` decrease strictly in magnitude; `deltas[i]` is the
/// contraction factor that produced `hyperplanes[i + 1]`.
struct ProofTrace {
  double epsilon0 = 0.0;
  std::vector<Hyperplane> hyperplanes;
  std::vector<double> deltas;
  int iterations = 0;
};

struct PrimalOutcome {
  bool intersecting = false;
  /// Filled when intersecting.
  SeparationCertificate certificate;
  /// Phase-1 residual of the cone-intersection LP.
  double infeasibility = 0.0;
};

/// Cone-intersection feasibility:
///   lambda, mu >= 0,  sum lambda_j Q_j - sum mu_k R_k = 0,
///   P1 . sum lambda_j Q_j = 1,
/// where P1 is a hemisphericity witness of b1. Feasible exactly when the
/// closed spherical hulls meet.
PrimalOutcome primal_intersect(const SphericalBody& b1, const SphericalBody& b2,
                               const ToleranceConfig& cfg = {});

/// Raw optimum of the witness LP
///   maximize t  s.t.  P.Q_j >= t,  P.R_k <= -t,  -1 <= P_m <= 1.
/// The optimum is never negative since P = 0 is feasible.
struct WitnessLp {
  double t = 0.0;
  Vector pole;
};
WitnessLp witness_lp(const SphericalBody& b1, const SphericalBody& b2,
                     const ToleranceConfig& cfg = {});

/// Separating pole when t > margin_tol; Intersecting (with the primal
/// certificate) when the primal oracle finds a common point. Anything in
/// between throws NumericallyAmbiguous.
SeparationCertificate dual_witness(const SphericalBody& b1, const SphericalBody& b2,
                                   const ToleranceConfig& cfg = {});

struct WedgeMembership {
  bool member = false;
  /// min(min_j p.Q_j, -max_k p.R_k)
  double margin = 0.0;
};

/// Direct evaluation against the generators; no LP.
WedgeMembership wedge_membership(const SphericalBody& b1, const SphericalBody& b2,
                                 const UnitPoint& p, const ToleranceConfig& cfg = {});

/// Hyperplane strictly separating two vertex sets in R^{n+1}, from
///   maximize t  s.t.  P.y >= r + t on `first`,  P.y <= r - t on `second`,
///   -1 <= P_m <= 1,
/// rescaled so the normal is unit. `gap` is the rescaled t.
struct SeparatingHyperplane {
  Hyperplane plane;
  double gap;
};
SeparatingHyperplane separate_hulls(const EuclideanHullBody& first, const EuclideanHullBody& second,
                                    const ToleranceConfig& cfg = {});

/// Same optimum as separate_hulls on scale_union_hull(first, delta) and
/// scale_union_hull(second, delta), solved as three sign cases with one
/// row per vertex. `gap` is measured directly on the contracted sets.
SeparatingHyperplane separate_scaled_unions(const EuclideanHullBody& first,
                                            const EuclideanHullBody& second, double delta,
                                            const ToleranceConfig& cfg = {});

struct ProofPathResult {
  SeparationCertificate certificate;
  ProofTrace trace;
};

/// Builds a witness by the constructive route: gnomonic projection around
/// each body's pole, eps-fattening with eps halved from 0.5 until the
/// pullbacks are disjoint, a separating hyperplane of their Euclidean
/// hulls, then repeated contraction (hull of Y and delta Y with delta set to
/// the current offset) until the offset drops below offset_tol. The
/// normal of the last hyperplane is the witness, checked against the
/// original generators.
///
/// Throws EpsilonSearchFailed, ContractionStalled or WitnessInvalid.
ProofPathResult proof_path_witness(const SphericalBody& b1, const SphericalBody& b2,
                                   const ToleranceConfig& cfg = {});

/// Minimum wedge margin over k random tangent perturbations of p at
/// radius margin(p)/2. Returns +inf for k == 0.
double wedge_openness_probe(const SphericalBody& b1, const SphericalBody& b2, const UnitPoint& p,
                            int k, std::uint64_t seed, const ToleranceConfig& cfg = {});

}  // namespace spheresep
