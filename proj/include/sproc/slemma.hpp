// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sproc/quadcurve.hpp"
#include "sproc/quadform.hpp"
#include "sproc/symcore.hpp"
#include "sproc/vec.hpp"

namespace sproc {

struct Margin {
  double value = 0.0;      // smallest eigenvalue of lift(g) - xi*lift(h)
  VecN eigenvector;        // unit vector attaining it, length n+1
};

Margin margin(const QuadraticFunction& g, const QuadraticFunction& h, double xi);

struct BestXi {
  double xi = 0.0;
  double margin_value = 0.0;
  int evals = 0;          // margin evaluations spent
  double bracket_hi = 0.0;
};

// Maximizes the concave map xi -> margin(g, h, xi) over xi >= 0. Brackets by
// doubling from 1 (cap 2^60, then BracketOverflowError), golden-section to
// interval width xi_tol, then one tangent-intersection polish step that lands
// exactly on kinks such as two crossing eigenvalue branches. Returns the best
// sampled point.
BestXi best_xi(const QuadraticFunction& g, const QuadraticFunction& h, double xi_tol = 1e-7,
               int max_iter = 200);

struct SlaterPoint {
  VecN x;
  double h_val = 0.0;  // > tol_slater
};

// Finds a point with h > tol_slater: the origin, the top eigenvector of
// lift(h) de-homogenized, coordinate lines through the origin, then seeded
// random lines, each maximized in closed form. Returns none when lift(h) has
// no positive eigenvalue (h never exceeds 0) or the budget runs out.
std::optional<SlaterPoint> check_slater(const QuadraticFunction& h, int budget = 64,
                                        std::uint64_t seed = 1, double tol_slater = 0.0);

enum class Verdict { Certified, Refuted, Indeterminate };

struct Certificate {
  double xi = 0.0;
  double margin_value = 0.0;  // >= -tol_cert * scale
};

struct CertifyOptions {
  double tol_cert = 1e-9;            // relative to scale = 1 + |A|_F + |B|_F
  double indeterminate_band = 1e-6;  // relative margin band treated as undecidable
  int oracle_budget = 2000;
  std::uint64_t seed = 1;
  bool force = false;  // proceed without a Slater point (certificates stay valid)
  double xi_tol = 1e-7;
  int max_iter = 200;
};

struct CertifyDiagnostics {
  double best_xi = 0.0;
  double best_margin = 0.0;
  int margin_evals = 0;
  double bracket_hi = 0.0;
  int oracle_trials = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  double tol_cert = 1e-9;
  double indeterminate_band = 1e-6;
  bool slater_forced = false;
};

struct CertifyResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Certificate> certificate;
  std::optional<Counterexample> counterexample;
  std::optional<SlaterPoint> slater;
  CertifyDiagnostics diagnostics;
};

// Decides whether g >= 0 on {h >= 0}. Requires a Slater point (h > 0
// somewhere) unless opts.force; maximizes the margin, certifies when the best
// margin clears -tol_cert*scale, otherwise hunts for a counterexample with
// the line oracle seeded by the minimizing eigenvectors. Indeterminate when
// neither side can be established.
CertifyResult certify(const QuadraticFunction& g, const QuadraticFunction& h,
                      const CertifyOptions& opts = {});

// t -> (g(x(t)), h(x(t))) along the affine path x(t) = x2 + t*(x1 - x2);
// exactly quadratic in t. x1 == x2 gives the constant curve.
QuadCurve2 joint_range_curve(const QuadraticFunction& g, const QuadraticFunction& h,
                             std::span<const double> x1, std::span<const double> x2);

struct ProjectedCurve {
  QuadCurve2 curve;
  std::vector<SymMatrix> basis;  // orthonormal under trace_inner, size <= 2
  bool rank_deficient = false;   // span{lift(g), lift(h)} had rank <= 1
};

// Coordinates of the projection of X(t) = [x(t);1][x(t);1]' onto
// span{lift(g), lift(h)} in an orthonormal basis of that span.
ProjectedCurve projected_curve(const QuadraticFunction& g, const QuadraticFunction& h,
                               std::span<const double> x1, std::span<const double> x2,
                               double tol_rank = 1e-12);

struct LmiRecord {
  std::optional<SymMatrix> lifted_objective;  // lift(g) when g is concrete
  SymMatrix lifted_constraint;                // lift(h)
  std::string statement;
};

// Serializable single-matrix-inequality form of the constraint family
// "g - xi*h >= 0 pointwise": A - xi*B PSD for some xi >= 0.
LmiRecord emit_lmi(const std::optional<QuadraticFunction>& g, const QuadraticFunction& h);

}  // namespace sproc
