#pragma once

#include <limits>
#include <vector>

#include "spheresep/geometry.hpp"

namespace spheresep::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  Vector row;
  Relation relation;
  double rhs;
};

/// maximize objective.x subject to the constraint rows and per-variable
/// bounds. Variables default to [0, +inf).
class LinearProgram {
 public:
  explicit LinearProgram(Vector objective);

  /// Returns the row index.
  std::size_t add_constraint(Vector row, Relation relation, double rhs);
  void set_bounds(Eigen::Index var, double lower, double upper);
  void set_free(Eigen::Index var) { set_bounds(var, -kInf, kInf); }

  Eigen::Index num_vars() const noexcept { return objective_.size(); }
  const Vector& objective() const noexcept { return objective_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  double lower(Eigen::Index var) const { return lower_[var]; }
  double upper(Eigen::Index var) const { return upper_[var]; }

  /// Throws DimensionMismatch or InvalidArgument when malformed.
  void validate() const;

 private:
  Vector objective_;
  std::vector<Constraint> constraints_;
  Vector lower_;
  Vector upper_;
};

enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status);

struct Outcome {
  Status status = Status::Infeasible;
  Vector solution;  // set when Optimal
  double objective_value = 0.0;
  /// Phase-1 sum of artificial variables; 0 when no phase 1 was needed.
  double infeasibility = 0.0;
  int pivots = 0;
};

struct SolverOptions {
  /// Phase-1 cutoff and the slack solve_lazy allows on candidate rows.
  double tol = ToleranceConfig{}.lp_tol;
  /// Smallest admissible pivot element.
  double pivot_tol = 1e-9;
  /// Reduced-cost threshold for an improving column.
  double cost_tol = 1e-11;
  int max_pivots = 50000;
};

/// Two-phase dense tableau simplex. The entering column follows Bland's
/// rule (lowest improving index). The leaving row is the largest pivot
/// element among near-minimum ratios, switching to Bland's lowest basic
/// index after a long run of degenerate pivots. The final basis is
/// recomputed from the original rows and, if that exposes negative basic
/// values, repaired by dual simplex pivots. Deterministic.
/// Throws IterationLimit once max_pivots is exceeded and
/// NumericallyAmbiguous when the optimum violates a row or bound by more
/// than 1e-7 * (1 + max(|x|_inf, max |rhs|)).
Outcome solve(const LinearProgram& program, const SolverOptions& options = {});

/// Solves `program` with the extra rows in `candidates`, bringing them in
/// lazily: starting from the first candidate, re-solve with the rows the
/// current optimum violates most (up to `batch` per round) until every
/// candidate holds within options.tol. Same optimum as adding all rows up
/// front, at a fraction of the tableau size when few rows end up active.
Outcome solve_lazy(const LinearProgram& program, const std::vector<Constraint>& candidates,
                   const SolverOptions& options = {}, int batch = 4);

/// Largest violation of any constraint or bound by `x`.
double max_violation(const LinearProgram& program, const Vector& x);

}  // namespace spheresep::lp
