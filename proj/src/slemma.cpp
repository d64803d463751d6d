// SPDX-License-Identifier: Apache-2.0
#include "sproc/slemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "sproc/errors.hpp"
#include "sproc/rng.hpp"

namespace sproc {

namespace {

constexpr double kBracketCap = 1152921504606846976.0;  // 2^60

double quad_form(const SymMatrix& m, std::span<const double> z) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.dim(); ++j) row += m(i, j) * z[j];
    s += z[i] * row;
  }
  return s;
}

VecN line_point(std::span<const double> x0, double t, std::span<const double> dir) {
  VecN x(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) x[i] = x0[i] + t * dir[i];
  return x;
}

}  // namespace

Margin margin(const QuadraticFunction& g, const QuadraticFunction& h, double xi) {
  if (g.dim() != h.dim()) throw DimensionMismatchError("margin: dimension mismatch");
  if (!std::isfinite(xi)) throw NonFiniteError("margin: non-finite multiplier");
  SymMatrix m = lift(g) - xi * lift(h);
  auto [value, vec] = min_eig(m);
  return {value, std::move(vec)};
}

BestXi best_xi(const QuadraticFunction& g, const QuadraticFunction& h, double xi_tol,
               int max_iter) {
  if (g.dim() != h.dim()) throw DimensionMismatchError("best_xi: dimension mismatch");
  if (!(xi_tol > 0.0)) throw std::invalid_argument("best_xi: xi_tol must be positive");
  SymMatrix a = lift(g);
  SymMatrix b = lift(h);

  struct Sample {
    double xi;
    double m;
    VecN z;
  };
  int evals = 0;
  auto eval_at = [&](double xi) {
    ++evals;
    auto [value, vec] = min_eig(a - xi * b);
    return Sample{xi, value, std::move(vec)};
  };

  Sample best = eval_at(0.0);
  auto consider = [&](const Sample& s) {
    if (s.m > best.m) best = s;
  };

  // Bracket: double until the margin starts falling.
  Sample prev = eval_at(0.5);
  Sample cur = eval_at(1.0);
  consider(prev);
  consider(cur);
  while (!(cur.m < prev.m)) {
    if (cur.xi >= kBracketCap) {
      throw BracketOverflowError("best_xi: margin never decreased up to the bracketing cap");
    }
    prev = cur;
    cur = eval_at(prev.xi * 2.0);
    consider(cur);
  }
  double bracket_hi = cur.xi;

  // Golden-section on [0, bracket_hi].
  const double invphi = 0.61803398874989484820;
  double lo = 0.0;
  double hi = bracket_hi;
  Sample s1 = eval_at(hi - invphi * (hi - lo));
  Sample s2 = eval_at(lo + invphi * (hi - lo));
  consider(s1);
  consider(s2);
  for (int iter = 0; iter < max_iter && hi - lo > xi_tol; ++iter) {
    if (s1.m >= s2.m) {
      hi = s2.xi;
      s2 = s1;
      s1 = eval_at(hi - invphi * (hi - lo));
      consider(s1);
    } else {
      lo = s1.xi;
      s1 = s2;
      s2 = eval_at(lo + invphi * (hi - lo));
      consider(s2);
    }
  }

  // Tangent polish: the margin is a minimum of smooth eigenvalue branches
  // with slope -z'Bz, so intersecting the tangents at the final two probes
  // lands on the crossing point of a kinked maximum exactly.
  double slope1 = -quad_form(b, s1.z);
  double slope2 = -quad_form(b, s2.z);
  if (slope1 > 0.0 && slope2 < 0.0) {
    double xi_p = (s2.m - s1.m + slope1 * s1.xi - slope2 * s2.xi) / (slope1 - slope2);
    if (std::isfinite(xi_p)) {
      xi_p = std::clamp(xi_p, 0.0, bracket_hi);
      consider(eval_at(xi_p));
    }
  }

  return {best.xi, best.m, evals, bracket_hi};
}

std::optional<SlaterPoint> check_slater(const QuadraticFunction& h, int budget,
                                        std::uint64_t seed, double tol_slater) {
  if (budget < 1) throw std::invalid_argument("check_slater: budget must be at least 1");
  int n = h.dim();

  auto try_point = [&](VecN x) -> std::optional<SlaterPoint> {
    if (!all_finite(x)) return std::nullopt;
    double v = eval(h, x);
    if (std::isfinite(v) && v > tol_slater) return SlaterPoint{std::move(x), v};
    return std::nullopt;
  };

  if (auto s = try_point(VecN(n, 0.0))) return s;

  SymMatrix b = lift(h);
  EigenDecomposition ed = eigen_sym(b);
  if (ed.eigenvalues.back() <= 0.0) {
    // h(x) = <lift(h), [x;1][x;1]'> and the rank-one factor is PSD, so a
    // nonpositive spectrum bounds h above by 0 everywhere.
    return std::nullopt;
  }

  // Maximize h along x0 + t*dir in closed form; walk outward when unbounded.
  auto try_line = [&](const VecN& x0, const VecN& dir) -> std::optional<SlaterPoint> {
    if (norm(dir) == 0.0) return std::nullopt;
    UnivariateQuadratic q = restrict_line(h, x0, dir);
    double t = 0.0;
    if (q.alpha < 0.0) {
      t = -q.beta / (2.0 * q.alpha);
    } else if (q.alpha > 0.0) {
      double vertex = -q.beta / (2.0 * q.alpha);
      t = vertex;
      double step = 1.0;
      for (int k = 0; k < 200 && q(t) <= tol_slater; ++k) {
        t = vertex + step;
        if (!std::isfinite(t) || !std::isfinite(q(t))) return std::nullopt;
        step *= 2.0;
      }
    } else if (q.beta != 0.0) {
      t = (q.beta > 0.0 ? 1.0 : -1.0) * (std::fabs(q.gamma) + std::fabs(tol_slater) + 1.0) /
          std::fabs(q.beta);
    }
    return try_point(line_point(x0, t, dir));
  };

  DehomogenizedSeed top = dehomogenize(ed.eigenvector(n));
  if (top.is_point) {
    if (auto s = try_point(top.vec)) return s;
  } else {
    if (auto s = try_line(VecN(n, 0.0), top.vec)) return s;
  }

  int spent = 0;
  for (int i = 0; i < n && spent < budget; ++i, ++spent) {
    VecN dir(n, 0.0);
    dir[i] = 1.0;
    if (auto s = try_line(VecN(n, 0.0), dir)) return s;
  }
  Rng rng(seed);
  while (spent < budget) {
    ++spent;
    VecN x0(n);
    VecN dir(n);
    for (int i = 0; i < n; ++i) {
      x0[i] = rng.normal();
      dir[i] = rng.normal();
    }
    if (auto s = try_line(x0, dir)) return s;
  }
  return std::nullopt;
}

CertifyResult certify(const QuadraticFunction& g, const QuadraticFunction& h,
                      const CertifyOptions& opts) {
  if (g.dim() != h.dim()) throw DimensionMismatchError("certify: dimension mismatch");
  SymMatrix a = lift(g);
  SymMatrix b = lift(h);
  double scale = 1.0 + a.frob_norm() + b.frob_norm();

  CertifyResult res;
  res.diagnostics.seed = opts.seed;
  res.diagnostics.scale = scale;
  res.diagnostics.tol_cert = opts.tol_cert;
  res.diagnostics.indeterminate_band = opts.indeterminate_band;

  res.slater = check_slater(h, 64, opts.seed);
  if (!res.slater) {
    if (!opts.force) {
      throw SlaterViolatedError("certify: h is nowhere strictly positive");
    }
    res.diagnostics.slater_forced = true;
  }

  BestXi bx;
  try {
    bx = best_xi(g, h, opts.xi_tol, opts.max_iter);
  } catch (const BracketOverflowError&) {
    if (!opts.force) throw;
    // Without a Slater point the margin may never decrease; any probe with a
    // nonnegative margin still certifies (certificate => copositivity).
    Margin m0 = margin(g, h, 0.0);
    Margin m1 = margin(g, h, 1.0);
    bx = m1.value > m0.value ? BestXi{1.0, m1.value, 2, kBracketCap}
                             : BestXi{0.0, m0.value, 2, kBracketCap};
  }
  res.diagnostics.best_xi = bx.xi;
  res.diagnostics.best_margin = bx.margin_value;
  res.diagnostics.margin_evals = bx.evals;
  res.diagnostics.bracket_hi = bx.bracket_hi;

  double tol_abs = opts.tol_cert * scale;
  if (bx.margin_value >= -tol_abs && is_psd(a - bx.xi * b, tol_abs)) {
    res.verdict = Verdict::Certified;
    res.certificate = Certificate{bx.xi, bx.margin_value};
    return res;
  }

  OracleOptions oo;
  oo.budget = opts.oracle_budget;
  oo.seed = opts.seed;
  auto add_hints = [&](double xi) {
    EigenDecomposition ed = eigen_sym(a - xi * b);
    for (int k = 0; k < ed.dim; ++k) {
      if (ed.eigenvalues[k] >= 0.0) break;
      DehomogenizedSeed s = dehomogenize(ed.eigenvector(k));
      if (s.is_point) {
        oo.hint_points.push_back(std::move(s.vec));
      } else {
        oo.hint_dirs.push_back(std::move(s.vec));
      }
    }
  };
  add_hints(bx.xi);
  if (bx.xi != 0.0) add_hints(0.0);

  std::optional<Counterexample> ce = oracle_search(g, h, oo);
  int trials = oo.budget;
  if (!ce && bx.margin_value <= -opts.indeterminate_band * scale) {
    // A clearly negative best margin means a counterexample exists; retry
    // harder before reporting indeterminate.
    OracleOptions retry = oo;
    retry.budget = 4 * oo.budget;
    retry.seed = Rng::mix(opts.seed, 0xFEED);
    ce = oracle_search(g, h, retry);
    trials += retry.budget;
  }
  res.diagnostics.oracle_trials = trials;
  if (ce) {
    res.verdict = Verdict::Refuted;
    res.counterexample = std::move(ce);
    return res;
  }
  res.verdict = Verdict::Indeterminate;
  return res;
}

QuadCurve2 joint_range_curve(const QuadraticFunction& g, const QuadraticFunction& h,
                             std::span<const double> x1, std::span<const double> x2) {
  int n = g.dim();
  if (h.dim() != n || static_cast<int>(x1.size()) != n || static_cast<int>(x2.size()) != n) {
    throw DimensionMismatchError("joint_range_curve: dimension mismatch");
  }
  if (!all_finite(x1) || !all_finite(x2)) {
    throw NonFiniteError("joint_range_curve: non-finite endpoint");
  }
  VecN dir(n);
  for (int i = 0; i < n; ++i) dir[i] = x1[i] - x2[i];

  QuadCurve2 c;
  if (norm(dir) == 0.0) {
    c.a = {eval(g, x1), 0.0, 0.0};
    c.b = {eval(h, x1), 0.0, 0.0};
    return c;
  }
  UnivariateQuadratic qa = restrict_line(g, x2, dir);
  UnivariateQuadratic qb = restrict_line(h, x2, dir);
  c.a = {qa.gamma, qa.beta, qa.alpha};
  c.b = {qb.gamma, qb.beta, qb.alpha};
  return c;
}

ProjectedCurve projected_curve(const QuadraticFunction& g, const QuadraticFunction& h,
                               std::span<const double> x1, std::span<const double> x2,
                               double tol_rank) {
  int n = g.dim();
  if (h.dim() != n || static_cast<int>(x1.size()) != n || static_cast<int>(x2.size()) != n) {
    throw DimensionMismatchError("projected_curve: dimension mismatch");
  }
  if (!all_finite(x1) || !all_finite(x2)) {
    throw NonFiniteError("projected_curve: non-finite endpoint");
  }

  // Lifted path [x(t);1][x(t);1]' = G0 + t*G1 + t^2*G2 for x(t) = x2 - t*d.
  VecN u(n + 1);
  VecN v(n + 1);
  for (int i = 0; i < n; ++i) {
    u[i] = x2[i];
    v[i] = x2[i] - x1[i];
  }
  u[n] = 1.0;
  v[n] = 0.0;
  SymMatrix g0 = rank_one_lift(x2);
  SymMatrix g1(n + 1);
  SymMatrix g2(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      g1.set(i, j, -(u[i] * v[j] + v[i] * u[j]));
      g2.set(i, j, v[i] * v[j]);
    }
  }

  std::vector<SymMatrix> lifts{lift(g), lift(h)};
  ProjectedCurve out;
  out.basis = gram_schmidt(lifts, tol_rank);
  out.rank_deficient = out.basis.size() < 2;
  const SymMatrix* path[3] = {&g0, &g1, &g2};
  for (int k = 0; k < 3; ++k) {
    out.curve.a[k] = out.basis.empty() ? 0.0 : trace_inner(*path[k], out.basis[0]);
    out.curve.b[k] = out.basis.size() < 2 ? 0.0 : trace_inner(*path[k], out.basis[1]);
  }
  return out;
}

LmiRecord emit_lmi(const std::optional<QuadraticFunction>& g, const QuadraticFunction& h) {
  LmiRecord rec;
  rec.lifted_constraint = lift(h);
  if (g) {
    if (g->dim() != h.dim()) throw DimensionMismatchError("emit_lmi: dimension mismatch");
    rec.lifted_objective = lift(*g);
  }
  rec.statement =
      "exists xi >= 0 : A - xi * B is positive semidefinite; "
      "A = lifted objective, B = lifted constraint";
  return rec;
}

}  // namespace sproc
