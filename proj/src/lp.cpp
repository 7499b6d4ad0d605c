#include "spheresep/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spheresep::lp {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kHarrisSlack = 1e-11;
constexpr double kVerifyTol = 1e-7;
constexpr double kReinvertBelow = 1e-6;
// Basic values above -kFeasTol count as feasible after reinversion.
constexpr double kFeasTol = 1e-9;

// Structural column c carries sign[c] * (orig var var_of[c]).
struct ColumnMap {
  std::vector<Eigen::Index> var_of;
  std::vector<double> sign;
  Vector shift;
};

struct Row {
  std::vector<double> coef;  // over structural columns
  Relation relation;
  double rhs;
};

ColumnMap map_variables(const LinearProgram& program, std::vector<Row>& bound_rows) {
  const Eigen::Index nvars = program.num_vars();
  ColumnMap map;
  map.shift = Vector::Zero(nvars);
  // Bound rows reference column indices; collect them once all columns exist.
  struct PendingBound { std::vector<std::pair<std::size_t, double>> terms; double rhs; };
  std::vector<PendingBound> pending;

  for (Eigen::Index j = 0; j < nvars; ++j) {
    const double lo = program.lower(j);
    const double hi = program.upper(j);
    if (lo < 0 && hi >= 0) {
      // Split into a nonnegative pair; the box becomes rows on the difference.
      const std::size_t plus = map.var_of.size();
      map.var_of.push_back(j); map.sign.push_back(1.0);
      map.var_of.push_back(j); map.sign.push_back(-1.0);
      if (std::isfinite(hi)) pending.push_back({{{plus, 1.0}, {plus + 1, -1.0}}, hi});
      if (std::isfinite(lo)) pending.push_back({{{plus, -1.0}, {plus + 1, 1.0}}, -lo});
    } else if (std::isfinite(lo)) {
      map.shift[j] = lo;
      const std::size_t c = map.var_of.size();
      map.var_of.push_back(j); map.sign.push_back(1.0);
      if (std::isfinite(hi)) pending.push_back({{{c, 1.0}}, hi - lo});
    } else {
      // lower = -inf, upper < 0: x = upper - x'.
      map.shift[j] = hi;
      map.var_of.push_back(j); map.sign.push_back(-1.0);
    }
  }

  const std::size_t ncols = map.var_of.size();
  for (const auto& p : pending) {
    Row row{std::vector<double>(ncols, 0.0), Relation::LessEqual, p.rhs};
    for (const auto& [col, value] : p.terms) row.coef[col] = value;
    bound_rows.push_back(std::move(row));
  }
  return map;
}

class Simplex {
 public:
  Simplex(Tableau tableau, std::vector<Eigen::Index> basis, const SolverOptions& options)
      : original_(tableau), t_(std::move(tableau)), basis_(std::move(basis)), opt_(options) {}

  // Maximizes cost.x over the columns not flagged in `banned`.
  // Returns false when unbounded.
  bool optimize(const Vector& cost, const std::vector<bool>& banned) {
    const Eigen::Index m = t_.rows();
    const Eigen::Index rhs = t_.cols() - 1;
    cost_ = cost;
    price();

    int degenerate_streak = 0;
    const int bland_after = std::max<int>(50, static_cast<int>(m));
    bool fresh = false;
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < rhs; ++j) {
        if (!banned[j] && z_[j] < -opt_.cost_tol) { enter = j; break; }
      }
      if (enter < 0) return true;

      const Eigen::Index leave = degenerate_streak < bland_after ? leaving_row_harris(enter)
                                                                 : leaving_row_bland(enter);
      // A small pivot element or a missing one may be accumulated round-off;
      // rebuild the tableau from the original rows and choose again.
      if (!fresh && (leave < 0 || t_(leave, enter) < kReinvertBelow)) {
        reinvert();
        fresh = true;
        continue;
      }
      if (leave < 0) return false;
      degenerate_streak = t_(leave, rhs) <= kHarrisSlack ? degenerate_streak + 1 : 0;
      pivot(leave, enter);
      fresh = false;
    }
  }

  // Tableau = B^-1 [A | b] for the current basis B, computed afresh.
  void reinvert() {
    const Eigen::Index m = t_.rows();
    Matrix basis_matrix(m, m);
    for (Eigen::Index i = 0; i < m; ++i) basis_matrix.col(i) = original_.col(basis_[i]);
    t_ = basis_matrix.fullPivLu().solve(Matrix(original_));
    if (cost_.size() > 0) price();
  }

  // Dual simplex on a dual-feasible basis whose recomputed values went
  // negative. Reinverts after every pivot. Returns false when no column can
  // repair a negative row or the pass runs too long.
  bool restore_feasibility(const std::vector<bool>& banned, double tol) {
    const Eigen::Index rhs = t_.cols() - 1;
    for (Eigen::Index step = 0; step <= t_.rows() + rhs; ++step) {
      Eigen::Index r = -1;
      for (Eigen::Index i = 0; i < t_.rows(); ++i) {
        if (t_(i, rhs) < -tol && (r < 0 || t_(i, rhs) < t_(r, rhs))) r = i;
      }
      if (r < 0) return true;
      Eigen::Index enter = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < rhs; ++j) {
        const double a = t_(r, j);
        if (banned[j] || a >= -opt_.pivot_tol) continue;
        const double ratio = std::max(z_[j], 0.0) / -a;
        if (ratio < best) { best = ratio; enter = j; }
      }
      if (enter < 0) return false;
      pivot(r, enter);
      reinvert();
    }
    return false;
  }

  // Rows within a small feasibility band of the minimum ratio compete;
  // the largest pivot element wins, then the smallest basic index.
  Eigen::Index leaving_row_harris(Eigen::Index enter) const {
    const Eigen::Index rhs = t_.cols() - 1;
    double bound = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      const double a = t_(i, enter);
      if (a > opt_.pivot_tol) bound = std::min(bound, (std::max(t_(i, rhs), 0.0) + kHarrisSlack) / a);
    }
    if (!std::isfinite(bound)) return -1;
    Eigen::Index leave = -1;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      const double a = t_(i, enter);
      if (a <= opt_.pivot_tol || std::max(t_(i, rhs), 0.0) / a > bound) continue;
      if (leave < 0 || a > t_(leave, enter) ||
          (a == t_(leave, enter) && basis_[i] < basis_[leave])) {
        leave = i;
      }
    }
    return leave;
  }

  // Plain Bland: among minimum-ratio rows, the smallest basic index leaves.
  Eigen::Index leaving_row_bland(Eigen::Index enter) const {
    const Eigen::Index rhs = t_.cols() - 1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      const double a = t_(i, enter);
      if (a > opt_.pivot_tol) best = std::min(best, std::max(t_(i, rhs), 0.0) / a);
    }
    if (!std::isfinite(best)) return -1;
    const double cutoff = best + 1e-12 * (1.0 + best);
    Eigen::Index leave = -1;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      const double a = t_(i, enter);
      if (a <= opt_.pivot_tol || std::max(t_(i, rhs), 0.0) / a > cutoff) continue;
      if (leave < 0 || basis_[i] < basis_[leave]) leave = i;
    }
    return leave;
  }

  void pivot(Eigen::Index r, Eigen::Index s) {
    if (++pivots_ > opt_.max_pivots) {
      throw Error(ErrorCode::IterationLimit,
                  "simplex exceeded " + std::to_string(opt_.max_pivots) + " pivots");
    }
    t_.row(r) /= t_(r, s);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, s);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    if (z_.size() == t_.cols()) {
      const double f = z_[s];
      if (f != 0.0) z_ -= f * t_.row(r).transpose();
    }
    basis_[r] = s;
  }

  // Reduced costs and objective for cost_ under the current tableau.
  void price() {
    const Eigen::Index rhs = t_.cols() - 1;
    z_ = Vector::Zero(t_.cols());
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      const double cb = cost_[basis_[i]];
      if (cb != 0.0) z_ += cb * t_.row(i).transpose();
    }
    z_.head(rhs) -= cost_;
  }

  bool optimal(const std::vector<bool>& banned) const {
    for (Eigen::Index j = 0; j + 1 < z_.size(); ++j) {
      if (!banned[j] && z_[j] < -opt_.cost_tol) return false;
    }
    return true;
  }

  double objective() const { return z_[z_.size() - 1]; }
  const Tableau& tableau() const { return t_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }
  int pivots() const { return pivots_; }

 private:
  const Tableau original_;
  Tableau t_;
  std::vector<Eigen::Index> basis_;
  SolverOptions opt_;
  Vector cost_;
  Vector z_;
  int pivots_ = 0;
};

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

LinearProgram::LinearProgram(Vector objective)
    : objective_(std::move(objective)),
      lower_(Vector::Zero(objective_.size())),
      upper_(Vector::Constant(objective_.size(), kInf)) {}

std::size_t LinearProgram::add_constraint(Vector row, Relation relation, double rhs) {
  if (row.size() != objective_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "constraint row length differs from objective");
  }
  constraints_.push_back({std::move(row), relation, rhs});
  return constraints_.size() - 1;
}

void LinearProgram::set_bounds(Eigen::Index var, double lower, double upper) {
  if (var < 0 || var >= objective_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "bound index out of range");
  }
  lower_[var] = lower;
  upper_[var] = upper;
}

void LinearProgram::validate() const {
  if (objective_.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty objective");
  for (const auto& c : constraints_) {
    if (c.row.size() != objective_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "constraint row length differs from objective");
    }
    if (!c.row.allFinite() || !std::isfinite(c.rhs)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite constraint data");
    }
  }
  if (!objective_.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite objective");
  for (Eigen::Index j = 0; j < objective_.size(); ++j) {
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] > upper_[j] ||
        lower_[j] == kInf || upper_[j] == -kInf) {
      throw Error(ErrorCode::InvalidArgument, "bad bounds on variable " + std::to_string(j));
    }
  }
}

Outcome solve(const LinearProgram& program, const SolverOptions& options) {
  program.validate();

  std::vector<Row> rows;
  const ColumnMap map = map_variables(program, rows);
  const std::size_t nstruct = map.var_of.size();

  std::vector<Row> all;
  all.reserve(program.constraints().size() + rows.size());
  for (const auto& c : program.constraints()) {
    Row row{std::vector<double>(nstruct, 0.0), c.relation, c.rhs - c.row.dot(map.shift)};
    double largest = 0.0;
    for (std::size_t col = 0; col < nstruct; ++col) {
      row.coef[col] = c.row[map.var_of[col]] * map.sign[col];
      largest = std::max(largest, std::abs(row.coef[col]));
    }
    // Equilibrate so every row has a unit largest coefficient.
    if (largest > 0.0) {
      for (double& v : row.coef) v /= largest;
      row.rhs /= largest;
    }
    all.push_back(std::move(row));
  }
  for (auto& r : rows) all.push_back(std::move(r));

  // Nonnegative right-hand sides; a >= row with zero rhs is flipped so its
  // slack can start in the basis.
  std::size_t nslack = 0, nart = 0;
  for (auto& row : all) {
    const bool flip = row.rhs < 0 || (row.rhs == 0 && row.relation == Relation::GreaterEqual);
    if (flip) {
      row.rhs = -row.rhs;
      for (double& v : row.coef) v = -v;
      if (row.relation == Relation::LessEqual) row.relation = Relation::GreaterEqual;
      else if (row.relation == Relation::GreaterEqual) row.relation = Relation::LessEqual;
    }
    if (row.relation != Relation::Equal) ++nslack;
    if (row.relation != Relation::LessEqual) ++nart;
  }

  const Eigen::Index m = static_cast<Eigen::Index>(all.size());
  const Eigen::Index ncols = static_cast<Eigen::Index>(nstruct + nslack + nart);
  Tableau t = Tableau::Zero(m, ncols + 1);
  std::vector<Eigen::Index> basis(m);
  std::vector<bool> artificial(ncols, false);
  Eigen::Index slack = static_cast<Eigen::Index>(nstruct);
  Eigen::Index art = static_cast<Eigen::Index>(nstruct + nslack);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Row& row = all[i];
    for (std::size_t col = 0; col < nstruct; ++col) t(i, col) = row.coef[col];
    t(i, ncols) = row.rhs;
    switch (row.relation) {
      case Relation::LessEqual:
        t(i, slack) = 1.0;
        basis[i] = slack++;
        break;
      case Relation::GreaterEqual:
        t(i, slack++) = -1.0;
        [[fallthrough]];
      case Relation::Equal:
        t(i, art) = 1.0;
        artificial[art] = true;
        basis[i] = art++;
        break;
    }
  }

  Simplex simplex(std::move(t), std::move(basis), options);
  Outcome out;

  if (nart > 0) {
    Vector phase1 = Vector::Zero(ncols);
    for (Eigen::Index j = 0; j < ncols; ++j) if (artificial[j]) phase1[j] = -1.0;
    simplex.optimize(phase1, std::vector<bool>(ncols, false));
    out.infeasibility = std::max(0.0, -simplex.objective());
    if (out.infeasibility > options.tol) {
      out.status = Status::Infeasible;
      out.pivots = simplex.pivots();
      return out;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!artificial[simplex.basis()[i]]) continue;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (!artificial[j] && std::abs(simplex.tableau()(i, j)) > options.pivot_tol) {
          simplex.pivot(i, j);
          break;
        }
      }
    }
  }

  Vector cost = Vector::Zero(ncols);
  for (std::size_t col = 0; col < nstruct; ++col) {
    cost[col] = program.objective()[map.var_of[col]] * map.sign[col];
  }
  // Recompute the basic values from the original rows after each pass; the
  // updated tableau drifts when intermediate bases are ill conditioned, and
  // a dual pass then repairs the negative values it uncovers.
  constexpr int kRepairPasses = 4;
  for (int pass = 0;; ++pass) {
    const bool bounded = simplex.optimize(cost, artificial);
    out.pivots = simplex.pivots();
    if (!bounded) {
      out.status = Status::Unbounded;
      return out;
    }
    simplex.reinvert();
    if (pass == kRepairPasses || !simplex.restore_feasibility(artificial, kFeasTol)) break;
    if (simplex.optimal(artificial)) break;
  }
  Vector colval = Vector::Zero(ncols);
  for (Eigen::Index i = 0; i < m; ++i) {
    colval[simplex.basis()[i]] = std::max(0.0, simplex.tableau()(i, ncols));
  }
  out.solution = map.shift;
  for (std::size_t col = 0; col < nstruct; ++col) {
    out.solution[map.var_of[col]] += map.sign[col] * colval[col];
  }
  double scale = 1.0 + out.solution.lpNorm<Eigen::Infinity>();
  for (const auto& c : program.constraints()) scale = std::max(scale, 1.0 + std::abs(c.rhs));
  const double violation = max_violation(program, out.solution);
  if (violation > kVerifyTol * scale) {
    throw Error(ErrorCode::NumericallyAmbiguous,
                "simplex optimum violates its constraints by " + format_number(violation));
  }
  out.objective_value = program.objective().dot(out.solution);
  out.status = Status::Optimal;
  return out;
}

namespace {

double row_violation(const Constraint& c, const Vector& x) {
  const double lhs = c.row.dot(x);
  switch (c.relation) {
    case Relation::LessEqual: return lhs - c.rhs;
    case Relation::GreaterEqual: return c.rhs - lhs;
    case Relation::Equal: return std::abs(lhs - c.rhs);
  }
  return 0.0;
}

}  // namespace

Outcome solve_lazy(const LinearProgram& program, const std::vector<Constraint>& candidates,
                   const SolverOptions& options, int batch) {
  if (candidates.empty()) return solve(program, options);
  LinearProgram working = program;
  std::vector<bool> active(candidates.size(), false);
  std::size_t next_seed = 0;
  auto activate = [&](std::size_t i) {
    working.add_constraint(candidates[i].row, candidates[i].relation, candidates[i].rhs);
    active[i] = true;
  };
  activate(next_seed++);

  for (;;) {
    Outcome out = solve(working, options);
    if (out.status == Status::Unbounded && next_seed < candidates.size()) {
      while (next_seed < candidates.size() && active[next_seed]) ++next_seed;
      if (next_seed < candidates.size()) activate(next_seed++);
      continue;
    }
    if (out.status != Status::Optimal) return out;

    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (active[i]) continue;
      const double v = row_violation(candidates[i], out.solution);
      if (v > options.tol) violated.emplace_back(-v, i);
    }
    if (violated.empty()) return out;
    const std::size_t take = std::min<std::size_t>(violated.size(), std::max(batch, 1));
    std::partial_sort(violated.begin(), violated.begin() + take, violated.end());
    for (std::size_t j = 0; j < take; ++j) activate(violated[j].second);
  }
}

double max_violation(const LinearProgram& program, const Vector& x) {
  double worst = 0.0;
  for (const auto& c : program.constraints()) {
    const double lhs = c.row.dot(x);
    double v = 0.0;
    switch (c.relation) {
      case Relation::LessEqual: v = lhs - c.rhs; break;
      case Relation::GreaterEqual: v = c.rhs - lhs; break;
      case Relation::Equal: v = std::abs(lhs - c.rhs); break;
    }
    worst = std::max(worst, v);
  }
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    worst = std::max(worst, program.lower(j) - x[j]);
    worst = std::max(worst, x[j] - program.upper(j));
  }
  return worst;
}

}  // namespace spheresep::lp
