// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sproc/symcore.hpp"
#include "sproc/vec.hpp"

namespace sproc {

// g(x) = x'Qx + 2 l'x + c
struct QuadraticFunction {
  SymMatrix Q;
  VecN l;
  double c = 0.0;

  int dim() const { return Q.dim(); }
};

QuadraticFunction make_quadratic(SymMatrix q, VecN l, double c);
QuadraticFunction constant_function(int dim, double c);

double eval(const QuadraticFunction& g, std::span<const double> x);

// (n+1) x (n+1) block matrix [Q l; l' c]; g(x) equals the trace inner product
// of lift(g) with [x;1][x;1]'.
SymMatrix lift(const QuadraticFunction& g);
QuadraticFunction unlift(const SymMatrix& m);
SymMatrix rank_one_lift(std::span<const double> x);  // [x;1][x;1]'

// g >= 0 everywhere iff lift(g) is positive semidefinite.
bool is_globally_nonneg(const QuadraticFunction& g, double tol);
bool is_globally_nonneg(const QuadraticFunction& g);

// q(t) = alpha t^2 + beta t + gamma
struct UnivariateQuadratic {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator()(double t) const { return (alpha * t + beta) * t + gamma; }
};

// Restriction of g to the line x0 + t*dir. Throws ZeroDirectionError when
// dir is the zero vector.
UnivariateQuadratic restrict_line(const QuadraticFunction& g, std::span<const double> x0,
                                  std::span<const double> dir);

struct Interval {
  double lo = 0.0;  // may be -inf
  double hi = 0.0;  // may be +inf
};

// Sorted disjoint closed intervals over the extended reals.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet all();
  static IntervalSet of(std::vector<Interval> parts);  // sorts and merges

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }
  bool contains(double t, double slack = 0.0) const;

 private:
  std::vector<Interval> parts_;
};

// {t : q(t) >= 0} in closed form via the discriminant. tol classifies which
// coefficients count as zero; the set itself is exact.
IntervalSet nonneg_region(const UnivariateQuadratic& q, double tol = 0.0);

struct LineMinimum {
  double t = 0.0;
  double value = 0.0;
  bool unbounded_below = false;  // value <= -cap at the witness t
};

// Minimum of q over s; nullopt when s is empty. When the infimum is -inf the
// returned witness satisfies q(t) <= -cap and is flagged unbounded_below.
std::optional<LineMinimum> min_on_intervals(const UnivariateQuadratic& q, const IntervalSet& s,
                                            double cap = 1e6, double tol = 0.0);

struct Counterexample {
  VecN x;
  double h_val = 0.0;  // >= -tol_feas, re-evaluated
  double g_val = 0.0;  // <= -tol_strict, re-evaluated
};

struct OracleOptions {
  int budget = 2000;
  std::uint64_t seed = 0;
  double tol_feas = 1e-9;
  double tol_strict = 1e-7;
  double cap = 1e6;
  // Anchors (points) and directions seeding extra lines, e.g. de-homogenized
  // eigenvectors supplied by the certificate search.
  std::vector<VecN> hint_points;
  std::vector<VecN> hint_dirs;
};

// Searches lines for a point with h >= 0 and g < 0, restricting both
// quadratics to each line and minimizing in closed form. Deterministic for a
// fixed seed and budget.
std::optional<Counterexample> oracle_search(const QuadraticFunction& g,
                                            const QuadraticFunction& h,
                                            const OracleOptions& opts);
std::optional<Counterexample> oracle_search(const QuadraticFunction& g,
                                            const QuadraticFunction& h, int budget,
                                            std::uint64_t seed, double tol_feas = 1e-9,
                                            double tol_strict = 1e-7);

// Splits z in R^{n+1} into either an anchor point (when |z_{n+1}| exceeds
// 1e-8 * ||z||) or a homogeneous direction.
struct DehomogenizedSeed {
  VecN vec;
  bool is_point = false;
};
DehomogenizedSeed dehomogenize(std::span<const double> z);

}  // namespace sproc
