#include "spheresep/separation.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "spheresep/lp.hpp"

namespace spheresep {

namespace {

lp::SolverOptions solver_options(const ToleranceConfig& cfg) {
  lp::SolverOptions opt;
  opt.tol = cfg.lp_tol;
  return opt;
}

void require_same_sphere(const SphericalBody& b1, const SphericalBody& b2) {
  if (b1.sphere_dim() != b2.sphere_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "bodies live on S^" + std::to_string(b1.sphere_dim()) +
                                                  " and S^" + std::to_string(b2.sphere_dim()));
  }
}

Vector combination(const SphericalBody& body, const std::vector<double>& weights) {
  Vector sum = Vector::Zero(body.generators().front().ambient_dim());
  for (std::size_t j = 0; j < weights.size(); ++j) sum += weights[j] * body.generators()[j].coords();
  return sum;
}

}  // namespace

PrimalOutcome primal_intersect(const SphericalBody& b1, const SphericalBody& b2,
                               const ToleranceConfig& cfg) {
  require_same_sphere(b1, b2);
  const UnitPoint pole = hemisphericity_witness(b1, cfg);
  hemisphericity_witness(b2, cfg);

  const Eigen::Index dim = pole.ambient_dim();
  const Eigen::Index k1 = static_cast<Eigen::Index>(b1.size());
  const Eigen::Index k2 = static_cast<Eigen::Index>(b2.size());
  const Eigen::Index nv = k1 + k2;

  lp::LinearProgram program(Vector::Zero(nv));
  for (Eigen::Index r = 0; r < dim; ++r) {
    Vector row(nv);
    for (Eigen::Index j = 0; j < k1; ++j) row[j] = b1.generators()[j][r];
    for (Eigen::Index j = 0; j < k2; ++j) row[k1 + j] = -b2.generators()[j][r];
    program.add_constraint(std::move(row), lp::Relation::Equal, 0.0);
  }
  Vector norm_row = Vector::Zero(nv);
  for (Eigen::Index j = 0; j < k1; ++j) norm_row[j] = pole.dot(b1.generators()[j]);
  program.add_constraint(std::move(norm_row), lp::Relation::Equal, 1.0);

  const lp::Outcome out = lp::solve(program, solver_options(cfg));
  PrimalOutcome result;
  result.infeasibility = out.infeasibility;
  if (out.status != lp::Status::Optimal) return result;

  SeparationCertificate& cert = result.certificate;
  cert.kind = CertificateKind::Intersecting;
  cert.lambda.assign(out.solution.data(), out.solution.data() + k1);
  cert.mu.assign(out.solution.data() + k1, out.solution.data() + nv);
  cert.common_point = normalize(combination(b1, cert.lambda), cfg);
  result.intersecting = true;
  return result;
}

WitnessLp witness_lp(const SphericalBody& b1, const SphericalBody& b2, const ToleranceConfig& cfg) {
  require_same_sphere(b1, b2);
  const Eigen::Index dim = b1.generators().front().ambient_dim();
  Vector objective = Vector::Zero(dim + 1);
  objective[dim] = 1.0;
  lp::LinearProgram program(objective);
  for (Eigen::Index m = 0; m < dim; ++m) program.set_bounds(m, -1.0, 1.0);
  program.set_free(dim);
  for (const auto& q : b1.generators()) {
    Vector row(dim + 1);
    row.head(dim) = q.coords();
    row[dim] = -1.0;
    program.add_constraint(std::move(row), lp::Relation::GreaterEqual, 0.0);
  }
  for (const auto& r : b2.generators()) {
    Vector row(dim + 1);
    row.head(dim) = r.coords();
    row[dim] = 1.0;
    program.add_constraint(std::move(row), lp::Relation::LessEqual, 0.0);
  }
  const lp::Outcome out = lp::solve(program, solver_options(cfg));
  if (out.status != lp::Status::Optimal) {
    // P = 0, t = 0 is always feasible and |t| is bounded by the box.
    throw Error(ErrorCode::NumericallyAmbiguous,
                std::string("witness LP ended ") + lp::to_string(out.status));
  }
  return {out.solution[dim], out.solution.head(dim)};
}

SeparationCertificate dual_witness(const SphericalBody& b1, const SphericalBody& b2,
                                   const ToleranceConfig& cfg) {
  hemisphericity_witness(b1, cfg);
  hemisphericity_witness(b2, cfg);
  const WitnessLp raw = witness_lp(b1, b2, cfg);

  if (raw.t > cfg.margin_tol) {
    const UnitPoint witness = normalize(raw.pole, cfg);
    const WedgeMembership wm = wedge_membership(b1, b2, witness, cfg);
    if (!wm.member) {
      throw Error(ErrorCode::NumericallyAmbiguous,
                  "witness margin " + format_number(wm.margin) + " fell into the tolerance band");
    }
    SeparationCertificate cert;
    cert.kind = CertificateKind::Disjoint;
    cert.witness = witness;
    cert.margin = wm.margin;
    return cert;
  }

  PrimalOutcome primal = primal_intersect(b1, b2, cfg);
  if (primal.intersecting) return std::move(primal.certificate);
  throw Error(ErrorCode::NumericallyAmbiguous,
              "witness LP optimum " + format_number(raw.t) +
                  " is within margin_tol but the primal oracle finds no common point");
}

WedgeMembership wedge_membership(const SphericalBody& b1, const SphericalBody& b2,
                                 const UnitPoint& p, const ToleranceConfig& cfg) {
  require_same_sphere(b1, b2);
  if (p.ambient_dim() != b1.generators().front().ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pole lives on a different sphere");
  }
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& q : b1.generators()) margin = std::min(margin, p.dot(q));
  for (const auto& r : b2.generators()) margin = std::min(margin, -p.dot(r));
  return {margin > cfg.margin_tol, margin};
}

namespace {

// maximize s1 - s2  s.t.  y.P >= c1 s1 on `first`,  y.P <= c2 s2 on `second`,
// -1 <= P_m <= 1, with the given bounds on s1 and s2. Returns the optimum
// (P, s1, s2), or nothing when the LP is not solved to optimality.
std::optional<Vector> solve_offsets(const EuclideanHullBody& first, const EuclideanHullBody& second,
                                    double c1, double c2, std::pair<double, double> s1_bounds,
                                    std::pair<double, double> s2_bounds, const ToleranceConfig& cfg) {
  const Eigen::Index dim = first.vertices.front().size();
  const Eigen::Index s1 = dim;
  const Eigen::Index s2 = dim + 1;
  Vector objective = Vector::Zero(dim + 2);
  objective[s1] = 1.0;
  objective[s2] = -1.0;
  lp::LinearProgram program(objective);
  for (Eigen::Index m = 0; m < dim; ++m) program.set_bounds(m, -1.0, 1.0);
  program.set_bounds(s1, s1_bounds.first, s1_bounds.second);
  program.set_bounds(s2, s2_bounds.first, s2_bounds.second);

  // Interleaved across the two sets; few rows are active at the optimum,
  // so they are generated lazily.
  std::vector<lp::Constraint> rows;
  rows.reserve(first.vertices.size() + second.vertices.size());
  for (std::size_t i = 0; i < std::max(first.vertices.size(), second.vertices.size()); ++i) {
    if (i < first.vertices.size()) {
      Vector row = Vector::Zero(dim + 2);
      row.head(dim) = first.vertices[i];
      row[s1] = -c1;
      rows.push_back({std::move(row), lp::Relation::GreaterEqual, 0.0});
    }
    if (i < second.vertices.size()) {
      Vector row = Vector::Zero(dim + 2);
      row.head(dim) = second.vertices[i];
      row[s2] = -c2;
      rows.push_back({std::move(row), lp::Relation::LessEqual, 0.0});
    }
  }
  const lp::Outcome out = lp::solve_lazy(program, rows, solver_options(cfg), static_cast<int>(dim));
  if (out.status != lp::Status::Optimal) return std::nullopt;
  return out.solution;
}

void check_vertex_sets(const EuclideanHullBody& first, const EuclideanHullBody& second) {
  if (first.vertices.empty() || second.vertices.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot separate an empty vertex set");
  }
  const Eigen::Index dim = first.vertices.front().size();
  for (const auto* set : {&first, &second}) {
    for (const auto& y : set->vertices) {
      if (y.size() != dim) throw Error(ErrorCode::DimensionMismatch, "vertex length");
    }
  }
}

// Smallest signed distance of the vertex sets from the plane, measured on
// the correct sides.
double plane_gap(const EuclideanHullBody& first, const EuclideanHullBody& second,
                 const Hyperplane& plane) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& y : first.vertices) gap = std::min(gap, plane.normal.coords().dot(y) - plane.offset);
  for (const auto& y : second.vertices) gap = std::min(gap, plane.offset - plane.normal.coords().dot(y));
  return gap;
}

}  // namespace

SeparatingHyperplane separate_hulls(const EuclideanHullBody& first, const EuclideanHullBody& second,
                                    const ToleranceConfig& cfg) {
  check_vertex_sets(first, second);
  const Eigen::Index dim = first.vertices.front().size();
  const auto sol = solve_offsets(first, second, 1.0, 1.0, {-lp::kInf, lp::kInf},
                                 {-lp::kInf, lp::kInf}, cfg);
  if (!sol) throw Error(ErrorCode::ContractionStalled, "separation LP was not solved");
  const double scale = sol->head(dim).norm();
  const double t = ((*sol)[dim] - (*sol)[dim + 1]) / 2.0;
  if (!(t > cfg.lp_tol) || !(scale > cfg.unit_tol)) {
    throw Error(ErrorCode::ContractionStalled, "vertex sets are not strictly separable");
  }
  const double r = ((*sol)[dim] + (*sol)[dim + 1]) / 2.0;
  return {Hyperplane{normalize(sol->head(dim), cfg), r / scale}, t / scale};
}

SeparatingHyperplane separate_scaled_unions(const EuclideanHullBody& first,
                                            const EuclideanHullBody& second, double delta,
                                            const ToleranceConfig& cfg) {
  check_vertex_sets(first, second);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::DeltaOutOfRange, "delta = " + format_number(delta));
  }
  const Eigen::Index dim = first.vertices.front().size();
  // With a = r + t = delta s1 and b = r - t = delta s2, the binding copy of
  // each vertex depends only on the signs of s1 and s2:
  //   y.P >= max(s1, delta s1),  y.P <= min(s2, delta s2).
  struct Case {
    double c1, c2;
    std::pair<double, double> s1, s2;
  };
  const Case cases[] = {
      {1.0, delta, {0.0, lp::kInf}, {0.0, lp::kInf}},
      {1.0, 1.0, {0.0, lp::kInf}, {-lp::kInf, 0.0}},
      {delta, 1.0, {-lp::kInf, 0.0}, {-lp::kInf, 0.0}},
  };
  std::optional<Vector> best;
  for (const Case& c : cases) {
    auto sol = solve_offsets(first, second, c.c1, c.c2, c.s1, c.s2, cfg);
    if (!sol) continue;
    if (!best || (*sol)[dim] - (*sol)[dim + 1] > (*best)[dim] - (*best)[dim + 1]) best = std::move(sol);
  }
  if (!best) throw Error(ErrorCode::ContractionStalled, "separation LP was not solved");
  const double scale = best->head(dim).norm();
  const double t = delta * ((*best)[dim] - (*best)[dim + 1]) / 2.0;
  if (!(t > cfg.lp_tol * delta) || !(scale > cfg.unit_tol)) {
    throw Error(ErrorCode::ContractionStalled, "vertex sets are not strictly separable");
  }
  const double r = delta * ((*best)[dim] + (*best)[dim + 1]) / 2.0;
  const Hyperplane plane{normalize(best->head(dim), cfg), r / scale};
  const double gap = plane_gap(scale_union_hull(first, delta), scale_union_hull(second, delta), plane);
  if (!(gap > 0.0)) {
    throw Error(ErrorCode::ContractionStalled,
                "hyperplane misses the contracted vertex sets by " + format_number(-gap));
  }
  return {plane, gap};
}

ProofPathResult proof_path_witness(const SphericalBody& b1, const SphericalBody& b2,
                                   const ToleranceConfig& cfg) {
  require_same_sphere(b1, b2);
  const TangentFrame frame1 = orthonormal_frame(hemisphericity_witness(b1, cfg));
  const TangentFrame frame2 = orthonormal_frame(hemisphericity_witness(b2, cfg));
  const TangentPolytope image1 = project_body(b1, frame1, cfg);
  const TangentPolytope image2 = project_body(b2, frame2, cfg);

  ProofPathResult result;
  ProofTrace& trace = result.trace;

  // Search for an eps at which the fattened bodies are still disjoint.
  double eps = 0.5;
  std::optional<EuclideanHullBody> hull1, hull2;
  for (int halving = 0; halving < cfg.max_iter; ++halving, eps *= 0.5) {
    SphericalBody fat1 = pullback(fatten(image1, eps), cfg);
    SphericalBody fat2 = pullback(fatten(image2, eps), cfg);
    if (!primal_intersect(fat1, fat2, cfg).intersecting) {
      hull1 = euclidean_hull(fat1);
      hull2 = euclidean_hull(fat2);
      break;
    }
  }
  if (!hull1) {
    throw Error(ErrorCode::EpsilonSearchFailed,
                "fattened bodies still meet after " + std::to_string(cfg.max_iter) + " halvings");
  }
  trace.epsilon0 = eps;

  SeparatingHyperplane current = separate_hulls(*hull1, *hull2, cfg);
  trace.hyperplanes.push_back(current.plane);

  const double delta_floor = cfg.offset_tol / 10.0;
  while (std::abs(current.plane.offset) >= cfg.offset_tol) {
    if (trace.iterations >= cfg.max_iter) {
      throw Error(ErrorCode::ContractionStalled,
                  "offset still " + format_number(current.plane.offset) + " after " +
                      std::to_string(cfg.max_iter) + " contraction rounds");
    }
    const double previous = std::abs(current.plane.offset);
    const double delta = std::min(std::max(previous, delta_floor), 1.0 - 1e-12);
    current = separate_scaled_unions(*hull1, *hull2, delta, cfg);
    if (!(std::abs(current.plane.offset) <= previous * (1.0 - cfg.lp_tol))) {
      throw Error(ErrorCode::ContractionStalled,
                  "offset went from " + format_number(previous) + " to " +
                      format_number(std::abs(current.plane.offset)));
    }
    trace.hyperplanes.push_back(current.plane);
    trace.deltas.push_back(delta);
    ++trace.iterations;
  }

  const UnitPoint& witness = current.plane.normal;
  const WedgeMembership wm = wedge_membership(b1, b2, witness, cfg);
  if (!wm.member) {
    throw Error(ErrorCode::WitnessInvalid,
                "final normal has wedge margin " + format_number(wm.margin));
  }
  result.certificate.kind = CertificateKind::Disjoint;
  result.certificate.witness = witness;
  result.certificate.margin = wm.margin;
  return result;
}

double wedge_openness_probe(const SphericalBody& b1, const SphericalBody& b2, const UnitPoint& p,
                            int k, std::uint64_t seed, const ToleranceConfig& cfg) {
  double worst = std::numeric_limits<double>::infinity();
  if (k <= 0) return worst;
  const WedgeMembership base = wedge_membership(b1, b2, p, cfg);
  if (!base.member) throw Error(ErrorCode::InvalidArgument, "probe centre is not a wedge member");
  const double radius = base.margin / 2.0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index dim = p.ambient_dim();
  for (int i = 0; i < k; ++i) {
    Vector u(dim);
    double len = 0.0;
    do {
      for (Eigen::Index m = 0; m < dim; ++m) u[m] = gauss(rng);
      u -= p.dot(u) * p.coords();
      len = u.norm();
    } while (len < 1e-6);
    const UnitPoint moved = normalize(p.coords() + radius * u / len, cfg);
    worst = std::min(worst, wedge_membership(b1, b2, moved, cfg).margin);
  }
  return worst;
}

}  // namespace spheresep
