// SPDX-License-Identifier: Apache-2.0
#include "sproc/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sproc/errors.hpp"
#include "sproc/rng.hpp"

namespace sproc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

QuadraticFunction make_quadratic(SymMatrix q, VecN l, double c) {
  if (static_cast<int>(l.size()) != q.dim()) {
    throw DimensionMismatchError("make_quadratic: l size does not match Q");
  }
  if (!q.finite() || !all_finite(l) || !std::isfinite(c)) {
    throw NonFiniteError("make_quadratic: non-finite coefficient");
  }
  return QuadraticFunction{std::move(q), std::move(l), c};
}

QuadraticFunction constant_function(int dim, double c) {
  return QuadraticFunction{SymMatrix(dim), VecN(static_cast<std::size_t>(dim), 0.0), c};
}

double eval(const QuadraticFunction& g, std::span<const double> x) {
  const int n = g.dim();
  if (static_cast<int>(x.size()) != n) {
    throw DimensionMismatchError("eval: point size does not match");
  }
  double s = g.c;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += g.Q(i, j) * x[static_cast<std::size_t>(j)];
    s += x[static_cast<std::size_t>(i)] * row + 2.0 * g.l[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  }
  return s;
}

SymMatrix lift(const QuadraticFunction& g) {
  const int n = g.dim();
  SymMatrix m(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.set(i, j, g.Q(i, j));
    m.set(i, n, g.l[static_cast<std::size_t>(i)]);
  }
  m.set(n, n, g.c);
  return m;
}

QuadraticFunction unlift(const SymMatrix& m) {
  const int n = m.dim() - 1;
  if (n < 0) throw DimensionMismatchError("unlift: matrix too small");
  SymMatrix q(n);
  VecN l(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) q.set(i, j, m(i, j));
    l[static_cast<std::size_t>(i)] = m(i, n);
  }
  return QuadraticFunction{std::move(q), std::move(l), m(n, n)};
}

SymMatrix rank_one_lift(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  SymMatrix m(n + 1);
  auto at = [&](int i) { return i < n ? x[static_cast<std::size_t>(i)] : 1.0; };
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) m.set(i, j, at(i) * at(j));
  }
  return m;
}

bool is_globally_nonneg(const QuadraticFunction& g, double tol) { return is_psd(lift(g), tol); }
bool is_globally_nonneg(const QuadraticFunction& g) { return is_psd(lift(g)); }

UnivariateQuadratic restrict_line(const QuadraticFunction& g, std::span<const double> x0,
                                  std::span<const double> dir) {
  const int n = g.dim();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(dir.size()) != n) {
    throw DimensionMismatchError("restrict_line: size mismatch");
  }
  if (norm(dir) == 0.0) throw ZeroDirectionError("restrict_line: zero direction");
  UnivariateQuadratic q;
  double alpha = 0.0;
  double beta = 0.0;
  for (int i = 0; i < n; ++i) {
    double qd = 0.0;
    double qx = 0.0;
    for (int j = 0; j < n; ++j) {
      qd += g.Q(i, j) * dir[static_cast<std::size_t>(j)];
      qx += g.Q(i, j) * x0[static_cast<std::size_t>(j)];
    }
    alpha += dir[static_cast<std::size_t>(i)] * qd;
    beta += 2.0 * (qx + g.l[static_cast<std::size_t>(i)]) * dir[static_cast<std::size_t>(i)];
  }
  q.alpha = alpha;
  q.beta = beta;
  q.gamma = eval(g, x0);
  return q;
}

IntervalSet IntervalSet::all() {
  IntervalSet s;
  s.parts_.push_back({-kInf, kInf});
  return s;
}

IntervalSet IntervalSet::of(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& p) { return p.lo > p.hi; });
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalSet s;
  for (const Interval& p : parts) {
    if (!s.parts_.empty() && p.lo <= s.parts_.back().hi) {
      s.parts_.back().hi = std::max(s.parts_.back().hi, p.hi);
    } else {
      s.parts_.push_back(p);
    }
  }
  return s;
}

bool IntervalSet::contains(double t, double slack) const {
  for (const Interval& p : parts_) {
    if (t >= p.lo - slack && t <= p.hi + slack) return true;
  }
  return false;
}

IntervalSet nonneg_region(const UnivariateQuadratic& q, double tol) {
  const double a = q.alpha;
  const double b = q.beta;
  const double c = q.gamma;
  if (std::fabs(a) <= tol) {
    if (std::fabs(b) <= tol) {
      return c >= 0.0 ? IntervalSet::all() : IntervalSet();
    }
    double r = -c / b;
    if (b > 0.0) return IntervalSet::of({{r, kInf}});
    return IntervalSet::of({{-kInf, r}});
  }
  const double disc = b * b - 4.0 * a * c;
  if (a > 0.0) {
    if (disc <= 0.0) return IntervalSet::all();
    double sq = std::sqrt(disc);
    double w = -(b + std::copysign(sq, b)) / 2.0;
    double r1 = (w != 0.0) ? w / a : 0.0;
    double r2 = (w != 0.0) ? c / w : 0.0;
    if (r1 > r2) std::swap(r1, r2);
    if (!(r1 < r2)) return IntervalSet::all();
    return IntervalSet::of({{-kInf, r1}, {r2, kInf}});
  }
  // concave
  if (disc < 0.0) return IntervalSet();
  double sq = std::sqrt(disc);
  double w = -(b + std::copysign(sq, b)) / 2.0;
  double r1 = (w != 0.0) ? w / a : 0.0;
  double r2 = (w != 0.0) ? c / w : 0.0;
  if (r1 > r2) std::swap(r1, r2);
  return IntervalSet::of({{r1, r2}});
}

std::optional<LineMinimum> min_on_intervals(const UnivariateQuadratic& q, const IntervalSet& s,
                                            double cap, double tol) {
  if (s.empty()) return std::nullopt;
  const double a = q.alpha;
  const double b = q.beta;
  const bool quad_up = a > tol;
  const bool quad_down = a < -tol;
  const bool lin_up = !quad_up && !quad_down && b > tol;
  const bool lin_down = !quad_up && !quad_down && b < -tol;

  // Unbounded-below detection: walk into the decreasing tail until q <= -cap.
  for (const Interval& p : s.parts()) {
    bool left = p.lo == -kInf && (quad_down || lin_up);
    bool right = p.hi == kInf && (quad_down || lin_down);
    if (!left && !right) continue;
    double anchor;
    if (p.lo == -kInf && p.hi == kInf) {
      anchor = 0.0;
    } else {
      anchor = left ? p.hi : p.lo;
    }
    double sgn = left ? -1.0 : 1.0;
    double step = std::max(1.0, std::fabs(anchor));
    double t = anchor;
    for (int k = 0; k < 2100; ++k) {
      if (q(t) <= -cap) return LineMinimum{t, q(t), true};
      double next = anchor + sgn * step;
      if (!std::isfinite(next) || !std::isfinite(q(next))) break;
      t = next;
      step *= 2.0;
    }
    // Cap unreachable in finite arithmetic; report the deepest point seen.
    return LineMinimum{t, q(t), true};
  }

  bool have = false;
  LineMinimum best{0.0, 0.0, false};
  auto consider = [&](double t) {
    double v = q(t);
    if (!have || v < best.value) {
      best = LineMinimum{t, v, false};
      have = true;
    }
  };
  for (const Interval& p : s.parts()) {
    if (p.lo != -kInf) consider(p.lo);
    if (p.hi != kInf) consider(p.hi);
    if (quad_up) {
      double v = -b / (2.0 * a);
      if (v >= p.lo && v <= p.hi) consider(v);
    } else if (!quad_down && !lin_up && !lin_down) {
      // constant on this part
      if (p.lo == -kInf && p.hi == kInf) consider(0.0);
    }
  }
  if (!have) return std::nullopt;
  return best;
}

DehomogenizedSeed dehomogenize(std::span<const double> z) {
  if (z.empty()) throw DimensionMismatchError("dehomogenize: empty vector");
  const std::size_t n = z.size() - 1;
  DehomogenizedSeed out;
  double zn = z[n];
  if (std::fabs(zn) > 1e-8 * norm(z)) {
    out.is_point = true;
    out.vec.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.vec[i] = z[i] / zn;
  } else {
    out.is_point = false;
    out.vec.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return out;
}

namespace {

double coeff_scale(const UnivariateQuadratic& q) {
  return std::max({1.0, std::fabs(q.alpha), std::fabs(q.beta), std::fabs(q.gamma)});
}

struct LineTrial {
  VecN x0;
  VecN dir;
};

// One line: clip to {h >= 0}, minimize g there in closed form.
std::optional<Counterexample> try_line(const QuadraticFunction& g, const QuadraticFunction& h,
                                       const LineTrial& line, const OracleOptions& opts) {
  if (norm(line.dir) == 0.0) return std::nullopt;
  UnivariateQuadratic qh = restrict_line(h, line.x0, line.dir);
  IntervalSet feas = nonneg_region(qh, 1e-12 * coeff_scale(qh));
  if (feas.empty()) return std::nullopt;
  UnivariateQuadratic qg = restrict_line(g, line.x0, line.dir);
  auto m = min_on_intervals(qg, feas, opts.cap, 1e-12 * coeff_scale(qg));
  if (!m || m->value > -opts.tol_strict) return std::nullopt;

  const std::size_t n = line.x0.size();
  // Re-evaluate in original coordinates; nudge along the line if rounding
  // pushed the endpoint marginally outside {h >= 0}.
  const double nudges[] = {0.0, 1e-12, -1e-12, 1e-9, -1e-9, 1e-6, -1e-6};
  for (double rel : nudges) {
    double t = m->t + rel * std::max(1.0, std::fabs(m->t));
    VecN x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = line.x0[i] + t * line.dir[i];
    if (!all_finite(x)) continue;
    double hv = eval(h, x);
    double gv = eval(g, x);
    if (hv >= -opts.tol_feas && gv <= -opts.tol_strict) {
      return Counterexample{std::move(x), hv, gv};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Counterexample> oracle_search(const QuadraticFunction& g,
                                            const QuadraticFunction& h,
                                            const OracleOptions& opts) {
  if (g.dim() != h.dim()) throw DimensionMismatchError("oracle_search: dimension mismatch");
  const int n = g.dim();
  if (n == 0) return std::nullopt;
  const std::size_t un = static_cast<std::size_t>(n);

  int used = 0;
  auto spend = [&]() -> bool { return used++ < opts.budget; };

  VecN zero(un, 0.0);
  auto axis = [&](int i) {
    VecN e(un, 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    return e;
  };
  auto random_vec = [&](Rng& rng, double scale) {
    VecN v(un);
    for (std::size_t i = 0; i < un; ++i) v[i] = scale * rng.normal();
    return v;
  };

  // Hinted anchors first: axis lines plus a few random directions through each.
  for (const VecN& p : opts.hint_points) {
    if (static_cast<int>(p.size()) != n || !all_finite(p)) continue;
    for (int i = 0; i < n; ++i) {
      if (!spend()) return std::nullopt;
      if (auto ce = try_line(g, h, {p, axis(i)}, opts)) return ce;
    }
    Rng rng(Rng::mix(opts.seed, 0x77AA + static_cast<std::uint64_t>(used)));
    for (int k = 0; k < 2; ++k) {
      if (!spend()) return std::nullopt;
      if (auto ce = try_line(g, h, {p, random_vec(rng, 1.0)}, opts)) return ce;
    }
  }
  // Hinted directions through the origin and random anchors.
  for (const VecN& d : opts.hint_dirs) {
    if (static_cast<int>(d.size()) != n || !all_finite(d) || norm(d) == 0.0) continue;
    if (!spend()) return std::nullopt;
    if (auto ce = try_line(g, h, {zero, d}, opts)) return ce;
    Rng rng(Rng::mix(opts.seed, 0x55BB + static_cast<std::uint64_t>(used)));
    for (int k = 0; k < 3; ++k) {
      if (!spend()) return std::nullopt;
      if (auto ce = try_line(g, h, {random_vec(rng, 1.0 + k), d}, opts)) return ce;
    }
  }
  // Coordinate axes through the origin.
  for (int i = 0; i < n; ++i) {
    if (!spend()) return std::nullopt;
    if (auto ce = try_line(g, h, {zero, axis(i)}, opts)) return ce;
  }
  // Seeded trials: coordinate axes through random anchors alternating with
  // fully random lines, at a cycle of anchor scales.
  const double scales[] = {0.5, 1.0, 3.0, 10.0};
  for (std::uint64_t k = 0; used < opts.budget; ++k) {
    Rng rng(Rng::mix(opts.seed, k));
    double scale = scales[k % 4];
    LineTrial trial;
    trial.x0 = random_vec(rng, scale);
    if (k % 2 == 0) {
      trial.dir = axis(static_cast<int>(k / 2 % static_cast<std::uint64_t>(n)));
    } else {
      trial.dir = random_vec(rng, 1.0);
    }
    ++used;
    if (auto ce = try_line(g, h, trial, opts)) return ce;
  }
  return std::nullopt;
}

std::optional<Counterexample> oracle_search(const QuadraticFunction& g,
                                            const QuadraticFunction& h, int budget,
                                            std::uint64_t seed, double tol_feas,
                                            double tol_strict) {
  OracleOptions opts;
  opts.budget = budget;
  opts.seed = seed;
  opts.tol_feas = tol_feas;
  opts.tol_strict = tol_strict;
  return oracle_search(g, h, opts);
}

}  // namespace sproc
