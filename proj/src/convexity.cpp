#include "spheresep/convexity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spheresep/lp.hpp"

namespace spheresep {

namespace {

void check_structure(const std::vector<UnitPoint>& gens, const ToleranceConfig& cfg) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "a body needs at least one generator");
  const Eigen::Index ambient = gens.front().ambient_dim();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].ambient_dim() != ambient) {
      throw Error(ErrorCode::DimensionMismatch, "generators live on different spheres");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((gens[i].coords() - gens[j].coords()).norm() <= cfg.unit_tol) {
        throw Error(ErrorCode::DuplicateGenerator,
                    "generators " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

lp::SolverOptions solver_options(const ToleranceConfig& cfg) {
  lp::SolverOptions opt;
  opt.tol = cfg.lp_tol;
  return opt;
}

}  // namespace

SphericalBody::SphericalBody(std::vector<UnitPoint> generators, const ToleranceConfig& cfg)
    : generators_(std::move(generators)) {
  check_structure(generators_, cfg);
}

SphericalBody::SphericalBody(std::vector<UnitPoint> generators, UnitPoint pole,
                             const ToleranceConfig& cfg)
    : generators_(std::move(generators)), pole_(std::move(pole)) {
  check_structure(generators_, cfg);
  if (pole_->ambient_dim() != generators_.front().ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pole and generators live on different spheres");
  }
  for (const auto& g : generators_) {
    if (!(pole_->dot(g) >= cfg.margin_tol)) {
      throw Error(ErrorCode::NotHemispherical, "supplied pole does not see every generator");
    }
  }
}

UnitPoint hemisphericity_witness(const SphericalBody& body, const ToleranceConfig& cfg) {
  if (body.known_pole()) return *body.known_pole();

  const Eigen::Index dim = body.generators().front().ambient_dim();
  // Variables: P (dim), t.
  Vector objective = Vector::Zero(dim + 1);
  objective[dim] = 1.0;
  lp::LinearProgram program(objective);
  for (Eigen::Index k = 0; k < dim; ++k) program.set_bounds(k, -1.0, 1.0);
  program.set_free(dim);
  for (const auto& q : body.generators()) {
    Vector row(dim + 1);
    row.head(dim) = q.coords();
    row[dim] = -1.0;
    program.add_constraint(std::move(row), lp::Relation::GreaterEqual, 0.0);
  }
  const lp::Outcome out = lp::solve(program, solver_options(cfg));
  if (out.status != lp::Status::Optimal || !(out.objective_value > cfg.margin_tol)) {
    throw Error(ErrorCode::NotHemispherical, "no open hemisphere contains all generators");
  }
  const UnitPoint pole = normalize(out.solution.head(dim), cfg);
  for (const auto& q : body.generators()) {
    if (!(pole.dot(q) >= cfg.margin_tol)) {
      throw Error(ErrorCode::NotHemispherical, "hemisphere margin below margin_tol");
    }
  }
  return pole;
}

TangentPolytope project_body(const SphericalBody& body, const TangentFrame& frame,
                             const ToleranceConfig& cfg) {
  TangentPolytope poly{frame, {}};
  poly.vertices.reserve(body.size());
  for (const auto& q : body.generators()) poly.vertices.push_back(central_project(frame, q, cfg));
  return poly;
}

TangentPolytope fatten(const TangentPolytope& poly, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::NegativeEpsilon, "eps = " + format_number(eps));
  if (eps == 0.0) return poly;
  const int n = poly.frame.dim();
  TangentPolytope out{poly.frame, {}};
  out.vertices.reserve(poly.vertices.size() * 2 * n);
  for (const auto& v : poly.vertices) {
    for (int k = 0; k < n; ++k) {
      Vector plus = v;
      plus[k] += eps;
      out.vertices.push_back(std::move(plus));
      Vector minus = v;
      minus[k] -= eps;
      out.vertices.push_back(std::move(minus));
    }
  }
  return out;
}

SphericalBody pullback(const TangentPolytope& poly, const ToleranceConfig& cfg) {
  if (poly.vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty polytope");
  std::vector<UnitPoint> gens;
  gens.reserve(poly.vertices.size());
  for (const auto& x : poly.vertices) {
    UnitPoint g = central_unproject(poly.frame, x);
    bool seen = false;
    for (const auto& h : gens) {
      if ((h.coords() - g.coords()).norm() <= cfg.unit_tol) { seen = true; break; }
    }
    if (!seen) gens.push_back(std::move(g));
  }
  return SphericalBody(std::move(gens), poly.frame.base(), cfg);
}

Membership spherical_hull_member(const SphericalBody& body, const UnitPoint& q,
                                 const ToleranceConfig& cfg) {
  const Eigen::Index dim = q.ambient_dim();
  if (dim != body.generators().front().ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query point lives on a different sphere");
  }
  const UnitPoint pole = hemisphericity_witness(body, cfg);
  const Eigen::Index k = static_cast<Eigen::Index>(body.size());

  // Variables: lambda (k), s, e+ (dim), e- (dim). Minimize the L1 residual.
  const Eigen::Index s = k;
  const Eigen::Index ep = k + 1;
  const Eigen::Index em = k + 1 + dim;
  const Eigen::Index nv = k + 1 + 2 * dim;
  Vector objective = Vector::Zero(nv);
  objective.tail(2 * dim).setConstant(-1.0);
  lp::LinearProgram program(objective);
  program.set_bounds(s, cfg.margin_tol, lp::kInf);

  for (Eigen::Index r = 0; r < dim; ++r) {
    Vector row = Vector::Zero(nv);
    for (Eigen::Index j = 0; j < k; ++j) row[j] = body.generators()[j][r];
    row[s] = -q[r];
    row[ep + r] = 1.0;
    row[em + r] = -1.0;
    program.add_constraint(std::move(row), lp::Relation::Equal, 0.0);
  }
  Vector norm_row = Vector::Zero(nv);
  for (Eigen::Index j = 0; j < k; ++j) norm_row[j] = pole.dot(body.generators()[j]);
  program.add_constraint(std::move(norm_row), lp::Relation::Equal, 1.0);

  const lp::Outcome out = lp::solve(program, solver_options(cfg));
  if (out.status != lp::Status::Optimal) return {false, std::numeric_limits<double>::infinity()};
  const double residual = -out.objective_value;
  return {residual <= cfg.margin_tol, residual};
}

EuclideanHullBody scale_union_hull(const EuclideanHullBody& body, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::DeltaOutOfRange, "delta = " + format_number(delta));
  }
  EuclideanHullBody out;
  out.vertices.reserve(body.vertices.size() * 2);
  out.vertices = body.vertices;
  for (const auto& v : body.vertices) out.vertices.push_back(delta * v);
  return out;
}

EuclideanHullBody euclidean_hull(const SphericalBody& body) {
  EuclideanHullBody out;
  out.vertices.reserve(body.size());
  for (const auto& g : body.generators()) out.vertices.push_back(g.coords());
  return out;
}

Membership affine_hull_member(std::span<const Vector> vertices, const Vector& x,
                              const ToleranceConfig& cfg) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex set");
  const Eigen::Index dim = x.size();
  const Eigen::Index k = static_cast<Eigen::Index>(vertices.size());
  const Eigen::Index nv = k + 2 * dim;
  Vector objective = Vector::Zero(nv);
  objective.tail(2 * dim).setConstant(-1.0);
  lp::LinearProgram program(objective);
  for (Eigen::Index r = 0; r < dim; ++r) {
    Vector row = Vector::Zero(nv);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (vertices[j].size() != dim) throw Error(ErrorCode::DimensionMismatch, "vertex length");
      row[j] = vertices[j][r];
    }
    row[k + r] = 1.0;
    row[k + dim + r] = -1.0;
    program.add_constraint(std::move(row), lp::Relation::Equal, x[r]);
  }
  Vector sum_row = Vector::Zero(nv);
  sum_row.head(k).setOnes();
  program.add_constraint(std::move(sum_row), lp::Relation::Equal, 1.0);
  const lp::Outcome out = lp::solve(program, solver_options(cfg));
  const double residual = -out.objective_value;
  return {residual <= cfg.margin_tol, residual};
}

double interior_margin(std::span<const Vector> vertices, const Vector& x,
                       const ToleranceConfig& cfg) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex set");
  const Eigen::Index dim = x.size();
  const Eigen::Index k = static_cast<Eigen::Index>(vertices.size());
  // The feasible rho for one direction form an interval starting at 0 when
  // x is in the hull, so the joint margin is the smallest per-direction one.
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index b = 0; b < 2 * dim; ++b) {
    const Eigen::Index axis = b / 2;
    const double sign = (b % 2 == 0) ? 1.0 : -1.0;
    Vector objective = Vector::Zero(k + 1);
    objective[k] = 1.0;
    lp::LinearProgram program(objective);
    // Bounded above so a degenerate hull cannot make the LP unbounded.
    program.set_bounds(k, 0.0, 1e6);
    for (Eigen::Index r = 0; r < dim; ++r) {
      Vector row = Vector::Zero(k + 1);
      for (Eigen::Index j = 0; j < k; ++j) row[j] = vertices[j][r];
      if (r == axis) row[k] = -sign;
      program.add_constraint(std::move(row), lp::Relation::Equal, x[r]);
    }
    Vector sum_row = Vector::Ones(k + 1);
    sum_row[k] = 0.0;
    program.add_constraint(std::move(sum_row), lp::Relation::Equal, 1.0);
    const lp::Outcome out = lp::solve(program, solver_options(cfg));
    if (out.status != lp::Status::Optimal) return -std::numeric_limits<double>::infinity();
    margin = std::min(margin, out.objective_value);
  }
  return margin;
}

}  // namespace spheresep
