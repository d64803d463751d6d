// SPDX-License-Identifier: Apache-2.0
#include "sproc/cone2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

#include "sproc/errors.hpp"
#include "sproc/rng.hpp"

namespace sproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double canon_angle(double theta) {
  if (!std::isfinite(theta)) throw NonFiniteError("canon_angle: non-finite angle");
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double angle_dist(double a, double b) {
  double d = canon_angle(a - b);
  return d <= kPi ? d : kTwoPi - d;
}

Vec2 unit_vec(double theta) { return {std::cos(theta), std::sin(theta)}; }

Cone2 Cone2::ray(double theta) { return Cone2(Kind::Ray, canon_angle(theta), 0.0); }

Cone2 Cone2::line(double theta) {
  double t = canon_angle(theta);
  if (t >= kPi) t -= kPi;
  return Cone2(Kind::Line, t, 0.0);
}

Cone2 Cone2::wedge(double lo, double width) {
  if (!std::isfinite(lo) || !std::isfinite(width)) {
    throw NonFiniteError("wedge: non-finite angles");
  }
  if (width < -kTolAng || width > kPi + kTolAng) {
    throw std::invalid_argument("wedge: width outside (0, pi]");
  }
  if (width <= kTolAng) return ray(lo + 0.5 * width);
  if (width >= kPi - kTolAng) width = kPi;
  return Cone2(Kind::Wedge, canon_angle(lo), width);
}

bool cone_eq(const Cone2& a, const Cone2& b, double tol) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Cone2::Kind::Zero:
    case Cone2::Kind::Plane:
      return true;
    case Cone2::Kind::Ray:
      return angle_dist(a.angle(), b.angle()) <= tol;
    case Cone2::Kind::Line: {
      double d = angle_dist(a.angle(), b.angle());
      return std::min(d, kPi - d) <= tol;
    }
    case Cone2::Kind::Wedge:
      return angle_dist(a.lo(), b.lo()) <= tol && std::fabs(a.width() - b.width()) <= tol;
  }
  return false;
}

Cone2 dual(const Cone2& k) {
  switch (k.kind()) {
    case Cone2::Kind::Zero:
      return Cone2::plane();
    case Cone2::Kind::Plane:
      return Cone2::zero();
    case Cone2::Kind::Ray:
      return Cone2::wedge(k.angle() - 0.5 * kPi, kPi);
    case Cone2::Kind::Line:
      return Cone2::line(k.angle() + 0.5 * kPi);
    case Cone2::Kind::Wedge:
      if (k.width() >= kPi - kTolAng) return Cone2::ray(k.lo() + 0.5 * kPi);
      return Cone2::wedge(k.lo() + k.width() - 0.5 * kPi, kPi - k.width());
  }
  throw std::logic_error("dual: unreachable");
}

double angular_depth(const Cone2& k, double theta) {
  double t = canon_angle(theta);
  switch (k.kind()) {
    case Cone2::Kind::Zero:
      return -kPi;
    case Cone2::Kind::Plane:
      return kPi;
    case Cone2::Kind::Ray:
      return -angle_dist(t, k.angle());
    case Cone2::Kind::Line:
      return -std::min(angle_dist(t, k.angle()), angle_dist(t, k.angle() + kPi));
    case Cone2::Kind::Wedge: {
      double d = canon_angle(t - k.lo());
      if (d <= k.width()) return std::min(d, k.width() - d);
      return -std::min(d - k.width(), kTwoPi - d);
    }
  }
  throw std::logic_error("angular_depth: unreachable");
}

bool contains(const Cone2& k, Vec2 x, double tol) {
  if (!std::isfinite(x.x) || !std::isfinite(x.y)) {
    throw NonFiniteError("contains: non-finite point");
  }
  if (norm(x) == 0.0) return true;
  return angular_depth(k, std::atan2(x.y, x.x)) >= -tol;
}

AngularSet AngularSet::full() {
  AngularSet s;
  s.arcs_.push_back({0.0, kTwoPi});
  return s;
}

bool AngularSet::full_circle() const {
  return arcs_.size() == 1 && arcs_[0].length >= kTwoPi - kTolAng;
}

AngularSet AngularSet::from_angles(std::span<const double> angles, double merge_tol) {
  std::vector<Arc> arcs;
  arcs.reserve(angles.size());
  for (double a : angles) arcs.push_back({canon_angle(a), 0.0});
  return from_arcs(std::move(arcs), merge_tol);
}

AngularSet AngularSet::from_arcs(std::vector<Arc> arcs, double merge_tol) {
  if (!std::isfinite(merge_tol)) throw NonFiniteError("from_arcs: non-finite tolerance");
  merge_tol = std::max(merge_tol, kTolAng);
  std::vector<std::pair<double, double>> iv;
  iv.reserve(2 * arcs.size());
  for (const Arc& a : arcs) {
    if (!std::isfinite(a.start) || !std::isfinite(a.length)) {
      throw NonFiniteError("from_arcs: non-finite arc");
    }
    if (a.length < 0.0) continue;
    double len = std::min(a.length, kTwoPi);
    if (len >= kTwoPi - kTolAng) return full();
    double s = canon_angle(a.start);
    iv.emplace_back(s, s + len);
    iv.emplace_back(s + kTwoPi, s + len + kTwoPi);
  }
  if (iv.empty()) return AngularSet();

  // Merge on the line; the +2*pi copies let runs that cross 0 close up.
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> merged;
  for (auto [s, e] : iv) {
    if (!merged.empty() && s <= merged.back().second + merge_tol) {
      merged.back().second = std::max(merged.back().second, e);
    } else {
      merged.emplace_back(s, e);
    }
  }

  double best_end = -1.0;
  for (auto [s, e] : merged) {
    if (s < kTwoPi) best_end = std::max(best_end, e);
  }
  double wrap_end = best_end - kTwoPi;  // circle coverage of [0, wrap_end] by the wrap run

  AngularSet out;
  for (auto [s, e] : merged) {
    if (s >= kTwoPi) continue;
    if (e - s >= kTwoPi - kTolAng) return full();
    if (e < best_end && e <= wrap_end + kTolAng) continue;  // inside the wrap run
    out.arcs_.push_back({s, e - s});
  }
  return out;
}

double AngularSet::distance(double theta) const {
  if (arcs_.empty()) return kPi;
  if (full_circle()) return 0.0;
  double t = canon_angle(theta);
  double best = kPi;
  for (const Arc& a : arcs_) {
    double off = canon_angle(t - a.start);
    if (off <= a.length) return 0.0;
    best = std::min(best, std::min(off - a.length, kTwoPi - off));
  }
  return best;
}

AngularSet intersect(const AngularSet& a, const AngularSet& b) {
  if (a.empty() || b.empty()) return AngularSet();
  if (a.full_circle()) return b;
  if (b.full_circle()) return a;
  std::vector<Arc> out;
  for (const Arc& x : a.arcs()) {
    for (const Arc& y : b.arcs()) {
      double d = canon_angle(y.start - x.start);
      for (double shift : {d, d - kTwoPi}) {
        double lo = std::max(0.0, shift);
        double hi = std::min(x.length, shift + y.length);
        if (hi >= lo - kTolAng) {
          out.push_back({canon_angle(x.start + lo), std::max(0.0, hi - lo)});
        }
      }
    }
  }
  return AngularSet::from_arcs(std::move(out), kTolAng);
}

AngularSet direction_set(const Cone2& k) {
  switch (k.kind()) {
    case Cone2::Kind::Zero:
      return AngularSet();
    case Cone2::Kind::Plane:
      return AngularSet::full();
    case Cone2::Kind::Ray:
      return AngularSet::from_arcs({{k.angle(), 0.0}});
    case Cone2::Kind::Line:
      return AngularSet::from_arcs({{k.angle(), 0.0}, {canon_angle(k.angle() + kPi), 0.0}});
    case Cone2::Kind::Wedge:
      return AngularSet::from_arcs({{k.lo(), k.width()}});
  }
  throw std::logic_error("direction_set: unreachable");
}

AngularSet spherical_project(std::span<const Vec2> points, double tol_origin, double merge_tol) {
  std::vector<double> angles;
  angles.reserve(points.size());
  for (Vec2 p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw NonFiniteError("spherical_project: non-finite point");
    }
    if (norm(p) <= tol_origin) continue;
    angles.push_back(std::atan2(p.y, p.x));
  }
  return AngularSet::from_angles(angles, merge_tol);
}

Cone2 conic_hull(const AngularSet& s) {
  if (s.empty()) return Cone2::zero();
  if (s.full_circle()) return Cone2::plane();
  const std::vector<Arc>& arcs = s.arcs();

  bool all_degenerate = true;
  for (const Arc& a : arcs) {
    if (a.length > kTolAng) {
      all_degenerate = false;
      break;
    }
  }
  if (all_degenerate) {
    double th0 = canon_angle(arcs[0].start + 0.5 * arcs[0].length);
    bool all_same = true;
    bool all_axis = true;
    for (const Arc& a : arcs) {
      double mid = canon_angle(a.start + 0.5 * a.length);
      double d0 = angle_dist(mid, th0);
      if (d0 > kTolAng) all_same = false;
      // Axis collinearity only at ulp scale: anything coarser would collapse
      // the hull of a nearly antipodal ray pair into a line, dropping the
      // half-plane between the rays.
      if (std::min(d0, angle_dist(mid, th0 + kPi)) > 3e-14) all_axis = false;
    }
    if (all_same) return Cone2::ray(th0);
    if (all_axis) return Cone2::line(th0);
  }

  // Covering arc: the complement of the largest circular gap between arcs.
  std::size_t m = arcs.size();
  double max_gap = -1.0;
  std::size_t first = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Arc& cur = arcs[i];
    std::size_t j = (i + 1) % m;
    double gap = (m == 1) ? kTwoPi - cur.length
                          : canon_angle(arcs[j].start - (cur.start + cur.length));
    if (gap > max_gap) {
      max_gap = gap;
      first = j;
    }
  }
  double cover = kTwoPi - max_gap;
  double start = arcs[first].start;
  if (cover <= kTolAng) return Cone2::ray(start + 0.5 * cover);
  if (cover < kPi - kTolAng) return Cone2::wedge(start, cover);
  if (cover <= kPi + kTolAng) return Cone2::wedge(start, kPi);
  return Cone2::plane();
}

namespace {

// Canonical cone of an angular set already known to be convex (an arc of
// length <= pi, an antipodal point pair, empty, or full).
Cone2 classify_convex(const AngularSet& s) {
  if (s.empty()) return Cone2::zero();
  if (s.full_circle()) return Cone2::plane();
  const std::vector<Arc>& arcs = s.arcs();
  if (arcs.size() == 1) {
    const Arc& a = arcs[0];
    if (a.length <= kTolAng) return Cone2::ray(a.start + 0.5 * a.length);
    if (a.length <= kPi + kTolAng) return Cone2::wedge(a.start, std::min(a.length, kPi));
    return conic_hull(s);
  }
  if (arcs.size() == 2 && arcs[0].length <= kTolAng && arcs[1].length <= kTolAng) {
    double m0 = canon_angle(arcs[0].start + 0.5 * arcs[0].length);
    double m1 = canon_angle(arcs[1].start + 0.5 * arcs[1].length);
    if (angle_dist(m0, m1 + kPi) <= 4.0 * kTolAng) return Cone2::line(m0);
  }
  return conic_hull(s);
}

}  // namespace

Cone2 intersect(const Cone2& a, const Cone2& b) {
  if (a.kind() == Cone2::Kind::Zero || b.kind() == Cone2::Kind::Zero) return Cone2::zero();
  if (a.kind() == Cone2::Kind::Plane) return b;
  if (b.kind() == Cone2::Kind::Plane) return a;
  return classify_convex(intersect(direction_set(a), direction_set(b)));
}

Cone2 sum(const Cone2& a, const Cone2& b) {
  if (a.kind() == Cone2::Kind::Zero) return b;
  if (b.kind() == Cone2::Kind::Zero) return a;
  if (a.kind() == Cone2::Kind::Plane || b.kind() == Cone2::Kind::Plane) return Cone2::plane();
  std::vector<Arc> arcs = direction_set(a).arcs();
  AngularSet rest = direction_set(b);
  const std::vector<Arc>& more = rest.arcs();
  arcs.insert(arcs.end(), more.begin(), more.end());
  return conic_hull(AngularSet::from_arcs(std::move(arcs), kTolAng));
}

bool spherically_convex(const AngularSet& s, double tol) {
  if (s.empty() || s.full_circle()) return true;
  const std::vector<Arc>& arcs = s.arcs();
  if (arcs.size() == 1) return arcs[0].length <= kPi + tol;
  if (arcs.size() == 2 && arcs[0].length <= tol && arcs[1].length <= tol) {
    double m0 = arcs[0].start + 0.5 * arcs[0].length;
    double m1 = arcs[1].start + 0.5 * arcs[1].length;
    return angle_dist(m0, m1 + kPi) <= 2.0 * tol;
  }
  return false;
}

namespace {

HomConvexReport hom_check_against(std::span<const Vec2> points, const AngularSet& reference,
                                  double eps, int segment_samples,
                                  const HomConvexOptions& opts) {
  if (!(eps > 0.0)) throw std::invalid_argument("hom_convex_check: eps must be positive");
  if (segment_samples < 2) {
    throw std::invalid_argument("hom_convex_check: need at least 2 segment samples");
  }
  HomConvexReport report;
  std::size_t n = points.size();
  if (n < 2) return report;

  auto check_pair = [&](std::size_t i, std::size_t j) {
    Vec2 base = points[i];
    Vec2 dir = points[j] - base;
    for (int k = 0; k < segment_samples; ++k) {
      double t = static_cast<double>(k) / (segment_samples - 1);
      Vec2 q = base + t * dir;
      if (norm(q) <= opts.tol_origin) continue;  // projection undefined at 0
      double th = std::atan2(q.y, q.x);
      double dist = reference.distance(th);
      if (dist > eps) {
        report.homconvex = false;
        report.violation = HomConvexViolation{i, j, t, canon_angle(th), dist};
        return false;
      }
    }
    return true;
  };

  std::size_t total = n * (n - 1) / 2;
  if (total <= opts.pair_budget) {
    for (std::size_t i = 0; i < n && report.homconvex; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        ++report.pairs_checked;
        if (!check_pair(i, j)) break;
      }
    }
  } else {
    Rng rng(opts.seed);
    for (std::size_t b = 0; b < opts.pair_budget; ++b) {
      std::size_t i = rng.index(n);
      std::size_t j = rng.index(n);
      if (i == j) continue;
      ++report.pairs_checked;
      if (!check_pair(i, j)) break;
    }
  }
  return report;
}

}  // namespace

HomConvexReport hom_convex_check(std::span<const Vec2> points, double eps, int segment_samples,
                                 const HomConvexOptions& opts) {
  AngularSet reference = spherical_project(points, opts.tol_origin, opts.merge_tol);
  return hom_check_against(points, reference, eps, segment_samples, opts);
}

HomConvexReport hom_convex_check(std::span<const Vec2> points, const AngularSet& reference,
                                 double eps, int segment_samples,
                                 const HomConvexOptions& opts) {
  return hom_check_against(points, reference, eps, segment_samples, opts);
}

namespace {

struct CurveSample {
  double t;
  Vec2 p;
};

double coeff_scale(const QuadCurve2& c) {
  double s = 0.0;
  for (double v : c.a) s = std::max(s, std::fabs(v));
  for (double v : c.b) s = std::max(s, std::fabs(v));
  return std::max(s, 1e-300);
}

// Bisect between neighboring samples until either the angular gap closes to
// delta or the parameter interval is exhausted. Segments that pass near the
// origin never settle by angle, so the parameter floor is what stops them.
void refine_between(const QuadCurve2& c, CurveSample lo, CurveSample hi, double delta,
                    double tol_origin, std::size_t max_points,
                    std::vector<CurveSample>& out) {
  struct Seg {
    CurveSample a;
    CurveSample b;
  };
  std::vector<Seg> stack{{lo, hi}};
  while (!stack.empty()) {
    if (out.size() >= max_points) return;
    Seg s = stack.back();
    stack.pop_back();
    double span = s.b.t - s.a.t;
    double floor_t = 1e-14 * std::max({1.0, std::fabs(s.a.t), std::fabs(s.b.t)});
    if (span <= floor_t) continue;
    double ra = norm(s.a.p);
    double rb = norm(s.b.p);
    bool need = true;
    if (ra > tol_origin && rb > tol_origin) {
      need = angle_dist(std::atan2(s.a.p.y, s.a.p.x), std::atan2(s.b.p.y, s.b.p.x)) > delta;
    }
    if (!need) continue;
    double tm = 0.5 * (s.a.t + s.b.t);
    CurveSample mid{tm, c.eval(tm)};
    out.push_back(mid);
    stack.push_back({s.a, mid});
    stack.push_back({mid, s.b});
  }
}

std::vector<CurveSample> refined_curve_samples(const QuadCurve2& c,
                                               const CurveSamplingPlan& plan) {
  double t_max = std::max(plan.t_max, 1e-6);
  int count = std::max(plan.count, 8);
  double delta = plan.refine_target > 0.0 ? plan.refine_target : 0.5 * plan.merge_tol;

  std::vector<CurveSample> samples;
  samples.reserve(static_cast<std::size_t>(count) + 256);
  for (int i = 0; i < count; ++i) {
    double t = -t_max + (2.0 * t_max) * i / (count - 1);
    samples.push_back({t, c.eval(t)});
  }

  double cs = coeff_scale(c);
  Vec2 lead = c.leading();
  Vec2 lin = c.linear();
  bool has_lead = norm(lead) > 1e-12 * cs;
  bool has_lin = norm(lin) > 1e-12 * cs;

  // Extend one tail geometrically until the sampled angle settles onto the
  // recession direction.
  auto extend_tail = [&](double sign, double target) {
    double t = sign * t_max;
    for (int k = 0; k < 60; ++k) {
      t *= 2.0;
      Vec2 p = c.eval(t);
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
      samples.push_back({t, p});
      if (norm(p) > plan.tol_origin &&
          angle_dist(std::atan2(p.y, p.x), target) <= 0.5 * delta) {
        return;
      }
    }
  };
  if (has_lead) {
    double th = std::atan2(lead.y, lead.x);
    extend_tail(+1.0, th);
    extend_tail(-1.0, th);
  } else if (has_lin) {
    extend_tail(+1.0, std::atan2(lin.y, lin.x));
    extend_tail(-1.0, std::atan2(-lin.y, -lin.x));
  }

  std::sort(samples.begin(), samples.end(),
            [](const CurveSample& a, const CurveSample& b) { return a.t < b.t; });
  samples.erase(std::unique(samples.begin(), samples.end(),
                            [](const CurveSample& a, const CurveSample& b) {
                              return a.t == b.t;
                            }),
                samples.end());

  std::vector<CurveSample> refined;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples.size() + refined.size() >= plan.max_points) break;
    refine_between(c, samples[i], samples[i + 1], delta, plan.tol_origin,
                   plan.max_points - samples.size(), refined);
  }
  samples.insert(samples.end(), refined.begin(), refined.end());
  std::sort(samples.begin(), samples.end(),
            [](const CurveSample& a, const CurveSample& b) { return a.t < b.t; });
  return samples;
}

}  // namespace

AngularSet curve_angular_set(const QuadCurve2& c, const CurveSamplingPlan& plan) {
  std::vector<CurveSample> samples = refined_curve_samples(c, plan);
  std::vector<double> angles;
  angles.reserve(samples.size() + 2);
  for (const CurveSample& s : samples) {
    if (norm(s.p) <= plan.tol_origin) continue;
    angles.push_back(std::atan2(s.p.y, s.p.x));
  }
  double cs = coeff_scale(c);
  Vec2 lead = c.leading();
  Vec2 lin = c.linear();
  if (norm(lead) > 1e-12 * cs) {
    angles.push_back(std::atan2(lead.y, lead.x));
  } else if (norm(lin) > 1e-12 * cs) {
    angles.push_back(std::atan2(lin.y, lin.x));
    angles.push_back(std::atan2(-lin.y, -lin.x));
  }
  return AngularSet::from_angles(angles, plan.merge_tol);
}

std::vector<Vec2> sample_curve(const QuadCurve2& c, const CurveSamplingPlan& plan) {
  std::vector<CurveSample> samples = refined_curve_samples(c, plan);
  std::vector<Vec2> out;
  out.reserve(samples.size());
  for (const CurveSample& s : samples) out.push_back(s.p);
  return out;
}

bool regularity_check(std::span<const Vec2> points, const Cone2& k, double tol) {
  bool open_interior =
      k.kind() == Cone2::Kind::Wedge || k.kind() == Cone2::Kind::Plane;
  std::vector<double> all;
  std::vector<double> kept;
  all.reserve(points.size());
  for (Vec2 p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw NonFiniteError("regularity_check: non-finite point");
    }
    if (norm(p) <= 1e-12) continue;
    double th = std::atan2(p.y, p.x);
    all.push_back(th);
    double depth = angular_depth(k, th);
    bool in_k = open_interior ? depth > kTolAng : depth >= -kTolAng;
    if (in_k) kept.push_back(th);
  }
  Cone2 left = conic_hull(AngularSet::from_angles(kept, kTolAng));
  Cone2 right = intersect(conic_hull(AngularSet::from_angles(all, kTolAng)), k);
  return cone_eq(left, right, tol);
}

namespace {

// Maximum of R*cos(theta - phase) over the arcs: endpoints plus the peak
// direction when an arc covers it.
double max_cos_on_arcs(const std::vector<Arc>& arcs, double r, double phase) {
  double best = -kInf;
  for (const Arc& a : arcs) {
    best = std::max(best, r * std::cos(a.start - phase));
    best = std::max(best, r * std::cos(a.start + a.length - phase));
    if (canon_angle(phase - a.start) <= a.length) best = std::max(best, r);
  }
  return best;
}

double min_cos_on_arcs(const std::vector<Arc>& arcs, double r, double phase,
                       double* arg = nullptr) {
  double best = kInf;
  double best_th = 0.0;
  auto consider = [&](double th) {
    double v = r * std::cos(th - phase);
    if (v < best) {
      best = v;
      best_th = th;
    }
  };
  for (const Arc& a : arcs) {
    consider(a.start);
    consider(a.start + a.length);
    double trough = phase + kPi;
    if (canon_angle(trough - a.start) <= a.length) consider(trough);
  }
  if (arg != nullptr) *arg = best_th;
  return best;
}

}  // namespace

SProcedure2DResult sprocedure_2d(const AngularSet& c, LinearForm2 psi, LinearForm2 phi,
                                 double tol) {
  if (c.empty()) throw std::invalid_argument("sprocedure_2d: empty direction set");
  if (!std::isfinite(psi.u1) || !std::isfinite(psi.u2) || !std::isfinite(phi.u1) ||
      !std::isfinite(phi.u2)) {
    throw NonFiniteError("sprocedure_2d: non-finite form");
  }
  double r_phi = std::hypot(phi.u1, phi.u2);
  double r_psi = std::hypot(psi.u1, psi.u2);
  double th_phi = r_phi > 0.0 ? std::atan2(phi.u2, phi.u1) : 0.0;
  double th_psi = r_psi > 0.0 ? std::atan2(psi.u2, psi.u1) : 0.0;

  double slater = r_phi > 0.0 ? max_cos_on_arcs(c.arcs(), r_phi, th_phi) : 0.0;
  if (!(slater > tol)) {
    throw SlaterViolatedError("sprocedure_2d: no direction with phi above tolerance");
  }

  Cone2 hull = conic_hull(c);

  auto witness_search = [&]() -> Vec2 {
    // Most negative psi over hull directions with phi >= 0.
    AngularSet region =
        intersect(direction_set(hull), direction_set(Cone2::wedge(th_phi - 0.5 * kPi, kPi)));
    double arg = 0.0;
    min_cos_on_arcs(region.arcs(), r_psi, th_psi, &arg);
    return unit_vec(arg);
  };

  if (hull.kind() == Cone2::Kind::Plane) {
    // Nonnegativity of a linear form on the whole plane forces psi = xi*phi.
    double xi = (psi.u1 * phi.u1 + psi.u2 * phi.u2) / (r_phi * r_phi);
    double rx = std::hypot(psi.u1 - xi * phi.u1, psi.u2 - xi * phi.u2);
    if (xi >= -tol && rx <= tol * (1.0 + r_psi + r_phi)) {
      return {std::max(xi, 0.0), std::nullopt};
    }
    return {std::nullopt, witness_search()};
  }

  std::vector<double> dirs;
  switch (hull.kind()) {
    case Cone2::Kind::Ray:
      dirs = {hull.angle()};
      break;
    case Cone2::Kind::Line:
      dirs = {hull.angle(), hull.angle() + kPi};
      break;
    case Cone2::Kind::Wedge:
      dirs = {hull.lo(), hull.hi()};
      if (hull.width() >= kPi - kTolAng) dirs.push_back(hull.lo() + 0.5 * kPi);
      break;
    default:
      throw std::logic_error("sprocedure_2d: unreachable hull kind");
  }

  double tol_a = tol * (1.0 + r_psi);
  double tol_b = tol * (1.0 + r_phi);
  double lo_xi = 0.0;
  double hi_xi = kInf;
  bool infeasible = false;
  for (double th : dirs) {
    Vec2 u = unit_vec(th);
    double a = psi(u);
    double b = phi(u);
    if (b > tol_b) {
      hi_xi = std::min(hi_xi, a / b);
    } else if (b < -tol_b) {
      lo_xi = std::max(lo_xi, a / b);
    } else if (a < -tol_a) {
      infeasible = true;
    }
  }
  if (!infeasible && lo_xi <= hi_xi) {
    return {lo_xi, std::nullopt};
  }
  return {std::nullopt, witness_search()};
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
  double scale = 0.0;
  for (Vec2 p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw NonFiniteError("polygon: non-finite vertex");
    }
    scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
  }
  scale = std::max(scale, 1e-300);

  std::vector<Vec2> w;
  w.reserve(vertices.size());
  for (Vec2 p : vertices) {
    if (w.empty() || norm(p - w.back()) > 1e-12 * scale) w.push_back(p);
  }
  while (w.size() > 1 && norm(w.front() - w.back()) <= 1e-12 * scale) w.pop_back();
  if (w.size() < 3) throw std::invalid_argument("polygon: fewer than 3 distinct vertices");

  double area2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    area2 += cross(w[i], w[(i + 1) % w.size()]);
  }
  if (area2 < 0.0) std::reverse(w.begin(), w.end());

  double eps_cross = 1e-12 * scale * scale;
  std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 prev = w[(i + n - 1) % n];
    Vec2 cur = w[i];
    Vec2 next = w[(i + 1) % n];
    double cr = cross(cur - prev, next - cur);
    if (cr < -eps_cross) throw std::invalid_argument("polygon: vertices not convex");
    if (cr > eps_cross) v_.push_back(cur);  // collinear vertices dropped
  }
  if (v_.size() < 3) throw std::invalid_argument("polygon: degenerate (collinear) vertices");
}

ConvexPolygon ConvexPolygon::hull_of(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) throw std::invalid_argument("hull_of: fewer than 3 distinct points");

  auto build = [&](bool upper) {
    std::vector<Vec2> chain;
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
      Vec2 p = upper ? pts[pts.size() - 1 - idx] : pts[idx];
      while (chain.size() >= 2 &&
             cross(chain.back() - chain[chain.size() - 2], p - chain.back()) <= 0.0) {
        chain.pop_back();
      }
      chain.push_back(p);
    }
    return chain;
  };
  std::vector<Vec2> lower = build(false);
  std::vector<Vec2> upper = build(true);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.size() < 3) throw std::invalid_argument("hull_of: all points collinear");
  return ConvexPolygon(std::move(lower));
}

double ConvexPolygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    s += norm(v_[(i + 1) % v_.size()] - v_[i]);
  }
  return s;
}

bool ConvexPolygon::contains(Vec2 p, double tol) const {
  for (std::size_t i = 0; i < v_.size(); ++i) {
    Vec2 a = v_[i];
    Vec2 e = v_[(i + 1) % v_.size()] - a;
    if (cross(e, p - a) < -tol * norm(e)) return false;
  }
  return true;
}

namespace {

// Clips the ray {tau*v : tau >= 0} against the polygon halfplanes. Returns
// false when the intersection is empty.
bool ray_clip(const ConvexPolygon& p, Vec2 v, double* lo_out, double* hi_out) {
  double lo = 0.0;
  double hi = kInf;
  const std::vector<Vec2>& vs = p.vertices();
  double nv = norm(v);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Vec2 a = vs[i];
    Vec2 e = vs[(i + 1) % vs.size()] - a;
    Vec2 inward{-e.y, e.x};
    double den = dot(inward, v);
    double num = dot(inward, a);  // interior: dot(inward, x) >= num
    double den_tiny = 1e-14 * norm(inward) * std::max(1.0, nv);
    if (std::fabs(den) <= den_tiny) {
      if (num > 1e-14 * norm(inward) * std::max(1.0, norm(a))) return false;
      continue;
    }
    if (den > 0.0) {
      lo = std::max(lo, num / den);
    } else {
      hi = std::min(hi, num / den);
    }
  }
  if (lo > hi) return false;
  *lo_out = lo;
  *hi_out = hi;
  return true;
}

}  // namespace

double gauge_inf(const ConvexPolygon& p, Vec2 v) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw NonFiniteError("gauge: non-finite v");
  if (norm(v) == 0.0) throw ZeroDirectionError("gauge: zero direction");
  double lo = 0.0;
  double hi = 0.0;
  if (!ray_clip(p, v, &lo, &hi)) return kInf;
  return lo;
}

double gauge_sup(const ConvexPolygon& p, Vec2 v) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw NonFiniteError("gauge: non-finite v");
  if (norm(v) == 0.0) throw ZeroDirectionError("gauge: zero direction");
  double lo = 0.0;
  double hi = 0.0;
  if (!ray_clip(p, v, &lo, &hi)) {
    double scale = 0.0;
    for (Vec2 q : p.vertices()) scale = std::max({scale, std::fabs(q.x), std::fabs(q.y)});
    if (p.contains({0.0, 0.0}, 1e-12 * std::max(1.0, scale))) return 0.0;
    throw RayMissesPolygonError("gauge_sup: ray misses the polygon");
  }
  return hi;
}

std::vector<Vec2> polygon_boundary_sample(const ConvexPolygon& p, int m) {
  const std::vector<Vec2>& vs = p.vertices();
  std::size_t nv = vs.size();
  if (m < static_cast<int>(nv)) {
    throw std::invalid_argument("polygon_boundary_sample: m below vertex count");
  }
  std::size_t extra = static_cast<std::size_t>(m) - nv;

  std::vector<double> lens(nv);
  double total = 0.0;
  for (std::size_t i = 0; i < nv; ++i) {
    lens[i] = norm(vs[(i + 1) % nv] - vs[i]);
    total += lens[i];
  }

  // Largest-remainder split of the extra points across edges by length.
  std::vector<std::size_t> quota(nv, 0);
  std::vector<std::pair<double, std::size_t>> rem(nv);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < nv; ++i) {
    double exact = static_cast<double>(extra) * lens[i] / total;
    quota[i] = static_cast<std::size_t>(exact);
    assigned += quota[i];
    rem[i] = {exact - static_cast<double>(quota[i]), i};
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  for (std::size_t k = 0; assigned < extra; ++k, ++assigned) {
    ++quota[rem[k].second];
  }

  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < nv; ++i) {
    Vec2 a = vs[i];
    Vec2 e = vs[(i + 1) % nv] - a;
    out.push_back(a);
    for (std::size_t j = 1; j <= quota[i]; ++j) {
      double f = static_cast<double>(j) / static_cast<double>(quota[i] + 1);
      out.push_back(a + f * e);
    }
  }
  return out;
}

}  // namespace sproc
