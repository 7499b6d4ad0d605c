// Test-side helpers: random data and oracles that do not go through the
// library's LP code.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spheresep/lp.hpp"

namespace spheresep::testing {

inline Vector gaussian_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  return v;
}

inline Vector random_unit(std::mt19937_64& rng, Eigen::Index dim) {
  Vector v;
  do {
    v = gaussian_vector(rng, dim);
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

// Unit vector orthogonal to `base`.
inline Vector random_tangent(std::mt19937_64& rng, const Vector& base) {
  Vector v;
  do {
    v = gaussian_vector(rng, base.size());
    v -= base.dot(v) * base;
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

// normalize(C + scale * u_j) for random tangent directions u_j of length
// up to 1.
inline std::vector<Vector> cluster(std::mt19937_64& rng, const Vector& centre, int count,
                                   double scale) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vector> out;
  for (int j = 0; j < count; ++j) {
    Vector v = centre + scale * unif(rng) * random_tangent(rng, centre);
    out.push_back(v / v.norm());
  }
  return out;
}

// Brute-force LP oracle: every basic point of {A x <= b} obtained by
// making `n` rows tight, filtered by feasibility. Returns -inf when no
// vertex is feasible. Only meant for bounded problems.
inline double vertex_enumeration_max(const Matrix& a, const Vector& b, const Vector& c,
                                     double feas_tol = 1e-9) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(n);
  for (Eigen::Index i = 0; i < n; ++i) pick[i] = static_cast<int>(i);
  if (n > m) return best;
  for (;;) {
    Matrix sub(n, n);
    Vector rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      sub.row(i) = a.row(pick[i]);
      rhs[i] = b[pick[i]];
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    if (lu.isInvertible() && lu.rcond() > 1e-12) {
      const Vector x = lu.solve(rhs);
      if (((a * x - b).array() <= feas_tol).all()) best = std::max(best, c.dot(x));
    }
    // Next combination in lexicographic order.
    Eigen::Index k = n - 1;
    while (k >= 0 && pick[k] == static_cast<int>(m - n + k)) --k;
    if (k < 0) break;
    ++pick[k];
    for (Eigen::Index j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

// Random bounded LP in the library's form together with the same problem
// as A x <= b for the enumeration oracle.
struct RandomLp {
  lp::LinearProgram program;
  Matrix a;
  Vector b;
};

inline RandomLp random_bounded_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(1, 6);
  std::uniform_int_distribution<int> nrows(0, 8);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 3.0);
  const int n = nvars(rng);
  const int m = nrows(rng);
  Vector c(n);
  for (int j = 0; j < n; ++j) c[j] = coef(rng);
  lp::LinearProgram program(c);
  Matrix a(m + 2 * n, n);
  Vector b(m + 2 * n);
  a.setZero();
  for (int j = 0; j < n; ++j) {
    const double lo = -width(rng);
    const double hi = width(rng);
    program.set_bounds(j, lo, hi);
    a(m + 2 * j, j) = 1.0;
    b[m + 2 * j] = hi;
    a(m + 2 * j + 1, j) = -1.0;
    b[m + 2 * j + 1] = -lo;
  }
  for (int i = 0; i < m; ++i) {
    Vector row(n);
    for (int j = 0; j < n; ++j) row[j] = coef(rng);
    // rhs > 0 keeps the origin feasible, so the oracle always has a vertex.
    const double rhs = 0.1 + width(rng) * 0.5;
    const int kind = static_cast<int>(rng() % 3);
    if (kind == 0) {
      program.add_constraint(row, lp::Relation::LessEqual, rhs);
      a.row(i) = row.transpose();
      b[i] = rhs;
    } else if (kind == 1) {
      program.add_constraint(-row, lp::Relation::GreaterEqual, -rhs);
      a.row(i) = row.transpose();
      b[i] = rhs;
    } else {
      // a >= row, written as -row.x <= rhs
      program.add_constraint(row, lp::Relation::GreaterEqual, -rhs);
      a.row(i) = -row.transpose();
      b[i] = rhs;
    }
  }
  return {std::move(program), std::move(a), std::move(b)};
}

// Shoelace area of the convex hull of planar points (Andrew's monotone
// chain).
inline double hull_area(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  });
  if (pts.size() < 3) return 0.0;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  double area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    area += p.x() * q.y() - q.x() * p.y();
  }
  return std::abs(area) / 2.0;
}

}  // namespace spheresep::testing
