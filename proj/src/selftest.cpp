// SPDX-License-Identifier: Apache-2.0
#include "sproc/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "sproc/cone2d.hpp"
#include "sproc/quadform.hpp"
#include "sproc/rng.hpp"
#include "sproc/slemma.hpp"
#include "sproc/symcore.hpp"
#include "sproc/vec.hpp"

namespace sproc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmtnum(double v) {
  char b[48];
  std::snprintf(b, sizeof(b), "%.3g", v);
  return b;
}

SymMatrix random_sym(Rng& rng, int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
  }
  return m;
}

QuadraticFunction random_quadratic(Rng& rng, int n) {
  SymMatrix q = random_sym(rng, n);
  VecN l(n);
  for (double& v : l) v = rng.normal();
  return make_quadratic(std::move(q), std::move(l), rng.normal());
}

VecN random_vec(Rng& rng, int n) {
  VecN v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

// Lines through the minimizing eigenvectors of lift(g) - xi*lift(h), the
// same seeding the certifier uses internally.
void add_eig_hints(const QuadraticFunction& g, const QuadraticFunction& h, double xi,
                   OracleOptions& oo) {
  SymMatrix m = lift(g);
  m -= xi * lift(h);
  EigenDecomposition ed = eigen_sym(m);
  for (int k = 0; k < ed.dim; ++k) {
    if (ed.eigenvalues[k] >= 0.0) break;
    DehomogenizedSeed s = dehomogenize(ed.eigenvector(k));
    if (s.is_point) {
      oo.hint_points.push_back(std::move(s.vec));
    } else {
      oo.hint_dirs.push_back(std::move(s.vec));
    }
  }
}

// 1. Certified exactly when an equally budgeted independent line search
// finds no feasible negative point.
CheckResult check_dichotomy(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "certify-oracle dichotomy";
  int used = 0;
  int skipped = 0;
  int disagree = 0;
  std::string first;
  for (int i = 0; i < sc.slemma_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 100000 + static_cast<std::uint64_t>(i)));
    int n = 1 + (i % 5);
    QuadraticFunction g = random_quadratic(rng, n);
    QuadraticFunction h = random_quadratic(rng, n);
    if (h.c < 0.1) h.c = 0.1 + rng.uniform(0.0, 1.0);

    CertifyOptions co;
    co.oracle_budget = sc.oracle_budget;
    co.seed = Rng::mix(sc.seed, 200000 + static_cast<std::uint64_t>(i));
    CertifyResult res = certify(g, h, co);
    if (std::fabs(res.diagnostics.best_margin) < 1e-5 * res.diagnostics.scale) {
      ++skipped;
      continue;
    }
    ++used;

    OracleOptions oo;
    oo.budget = sc.oracle_budget;
    oo.seed = Rng::mix(sc.seed, 300000 + static_cast<std::uint64_t>(i));
    add_eig_hints(g, h, res.diagnostics.best_xi, oo);
    add_eig_hints(g, h, 0.0, oo);
    bool found = oracle_search(g, h, oo).has_value();
    bool certified = res.verdict == Verdict::Certified;
    if (certified == found) {
      ++disagree;
      if (first.empty()) first = ", first at instance " + std::to_string(i);
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = disagree == 0 && used > 0 && out.seconds < 60.0;
  out.detail = std::to_string(used) + " decisive, " + std::to_string(skipped) +
               " borderline skipped, " + std::to_string(disagree) + " disagreements" + first;
  return out;
}

double pick_angle(Rng& rng) {
  if (rng.index(2) == 0) return kTwoPi * static_cast<double>(rng.index(720)) / 720.0;
  return rng.uniform(0.0, kTwoPi);
}

double pick_width(Rng& rng) {
  if (rng.index(2) == 0) return kPi * static_cast<double>(1 + rng.index(360)) / 360.0;
  return rng.uniform(1e-6, kPi);
}

Cone2 random_cone(Rng& rng) {
  switch (rng.index(5)) {
    case 0:
      return Cone2::zero();
    case 1:
      return Cone2::ray(pick_angle(rng));
    case 2:
      return Cone2::line(pick_angle(rng));
    case 3:
      return Cone2::wedge(pick_angle(rng), pick_width(rng));
    default:
      return Cone2::plane();
  }
}

// 2. dual(K1 n K2) == dual(K1) + dual(K2) and dual(dual(K)) == K.
CheckResult check_dual_calculus(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "dual cone calculus";
  Rng rng(Rng::mix(sc.seed, 2));
  int bad_identity = 0;
  int bad_involution = 0;
  std::string first;
  for (int i = 0; i < sc.cone_pairs; ++i) {
    Cone2 a = random_cone(rng);
    Cone2 b = random_cone(rng);
    Cone2 lhs = dual(intersect(a, b));
    Cone2 rhs = sum(dual(a), dual(b));
    if (!cone_eq(lhs, rhs, 1e-12)) {
      ++bad_identity;
      if (first.empty()) first = ", first identity failure at pair " + std::to_string(i);
    }
    if (!cone_eq(dual(dual(a)), a, 1e-12) || !cone_eq(dual(dual(b)), b, 1e-12)) {
      ++bad_involution;
      if (first.empty()) first = ", first involution failure at pair " + std::to_string(i);
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = bad_identity == 0 && bad_involution == 0 && out.seconds < 5.0;
  out.detail = std::to_string(sc.cone_pairs) + " pairs, " + std::to_string(bad_identity) +
               " identity failures, " + std::to_string(bad_involution) +
               " involution failures" + first;
  return out;
}

// 3. The value curve of a quadratic pair along a line always has a convex
// homogenization.
CheckResult check_curve_convexity(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "joint range curve convexity";
  int bad = 0;
  std::string first;
  for (int i = 0; i < sc.curve_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 400000 + static_cast<std::uint64_t>(i)));
    int n = 1 + (i % 5);
    QuadraticFunction g = random_quadratic(rng, n);
    QuadraticFunction h = random_quadratic(rng, n);
    VecN x1 = random_vec(rng, n);
    VecN x2 = random_vec(rng, n);
    QuadCurve2 c = joint_range_curve(g, h, x1, x2);

    CurveSamplingPlan plan;
    plan.count = sc.curve_samples;
    AngularSet ref = curve_angular_set(c, plan);
    std::vector<Vec2> pts = sample_curve(c, plan);

    HomConvexOptions ho;
    ho.seed = Rng::mix(sc.seed, 410000 + static_cast<std::uint64_t>(i));
    HomConvexReport rep = hom_convex_check(pts, ref, 1e-3, 17, ho);
    if (!rep.homconvex) {
      ++bad;
      if (first.empty() && rep.violation) {
        first = ", first at instance " + std::to_string(i) + " (distance " +
                fmtnum(rep.violation->distance) + ")";
      }
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = bad == 0 && out.seconds < 30.0;
  out.detail = std::to_string(sc.curve_instances) + " curves, " + std::to_string(bad) +
               " violations" + first;
  return out;
}

// 4. xi -> margin(g, h, xi) is concave.
CheckResult check_margin_concavity(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "margin concavity";
  int bad = 0;
  double worst = 1e300;
  for (int i = 0; i < sc.concavity_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 500000 + static_cast<std::uint64_t>(i)));
    int n = 1 + (i % 5);
    QuadraticFunction g = random_quadratic(rng, n);
    QuadraticFunction h = random_quadratic(rng, n);
    double scale_f = 1.0 + lift(g).frob_norm() + lift(h).frob_norm();
    for (int j = 0; j < sc.concavity_triples; ++j) {
      double xi1 = rng.uniform(0.0, 10.0);
      double xi2 = rng.uniform(0.0, 10.0);
      double lam = rng.uniform(0.0, 1.0);
      double m1 = margin(g, h, xi1).value;
      double m2 = margin(g, h, xi2).value;
      double mm = margin(g, h, lam * xi1 + (1.0 - lam) * xi2).value;
      double slack = (mm - (lam * m1 + (1.0 - lam) * m2)) / scale_f;
      worst = std::min(worst, slack);
      if (slack < -1e-8) ++bad;
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = bad == 0;
  out.detail = std::to_string(sc.concavity_instances * sc.concavity_triples) + " triples, " +
               std::to_string(bad) + " violations, worst normalized slack " + fmtnum(worst);
  return out;
}

// 5. Global nonnegativity by lifted PSD-ness agrees with an unconstrained
// line search seeded with the minimizing eigenvector.
CheckResult check_psd_lifting(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "nonnegativity lifting";
  int used = 0;
  int skipped = 0;
  int disagree = 0;
  std::string first;
  for (int i = 0; i < sc.psd_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 600000 + static_cast<std::uint64_t>(i)));
    int n = 1 + (i % 5);
    QuadraticFunction g;
    if (i % 3 == 0) {
      SymMatrix m(n + 1);
      for (int r = 0; r < n + 2; ++r) {
        VecN v = random_vec(rng, n + 1);
        for (int a = 0; a <= n; ++a) {
          for (int b = a; b <= n; ++b) m.set(a, b, m(a, b) + v[a] * v[b]);
        }
      }
      g = unlift(m);
    } else {
      g = random_quadratic(rng, n);
    }
    SymMatrix a = lift(g);
    EigenDecomposition ed = eigen_sym(a);
    double lam_min = ed.eigenvalues.front();
    if (std::fabs(lam_min) <= 1e-7 * std::max(1.0, a.frob_norm())) {
      ++skipped;
      continue;
    }
    ++used;
    bool nonneg = is_globally_nonneg(g);

    OracleOptions oo;
    oo.budget = sc.oracle_budget;
    oo.seed = Rng::mix(sc.seed, 610000 + static_cast<std::uint64_t>(i));
    DehomogenizedSeed s = dehomogenize(ed.eigenvector(0));
    if (s.is_point) {
      oo.hint_points.push_back(std::move(s.vec));
    } else {
      oo.hint_dirs.push_back(std::move(s.vec));
    }
    bool found = oracle_search(g, constant_function(n, 1.0), oo).has_value();
    if (nonneg == found) {
      ++disagree;
      if (first.empty()) first = ", first at instance " + std::to_string(i);
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = disagree == 0 && used > 0;
  out.detail = std::to_string(used) + " decisive, " + std::to_string(skipped) +
               " in-band skipped, " + std::to_string(disagree) + " disagreements" + first;
  return out;
}

double max_arc_length(const AngularSet& s) {
  double best = 0.0;
  for (const Arc& a : s.arcs()) best = std::max(best, a.length);
  return best;
}

bool well_separated(const std::vector<double>& ends_c, double k0, double k1) {
  for (double e : ends_c) {
    if (angle_dist(e, k0) < 1e-2 || angle_dist(e, k1) < 1e-2) return false;
  }
  return true;
}

// 6. Clipping a densely sampled arc to a wedge it penetrates keeps hull and
// clipped hull in agreement; a set touching the wedge only at the boundary
// is reported irregular.
CheckResult check_regularity(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "regular clipping";
  int bad = 0;
  int built = 0;
  std::string first;
  for (int i = 0; i < sc.regularity_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 700000 + static_cast<std::uint64_t>(i)));
    double k0 = 0.0;
    double kw = 1.0;
    double a0 = 0.0;
    double len = 1.0;
    bool ok = false;
    for (int tries = 0; tries < 500 && !ok; ++tries) {
      k0 = rng.uniform(0.0, kTwoPi);
      kw = rng.uniform(0.2, kPi - 0.01);
      a0 = rng.uniform(0.0, kTwoPi);
      len = rng.uniform(0.1, kPi - 0.05);
      if (!well_separated({a0, a0 + len}, k0, k0 + kw)) continue;
      AngularSet arc = AngularSet::from_arcs({Arc{canon_angle(a0), len}});
      AngularSet overlap = intersect(arc, direction_set(Cone2::wedge(k0, kw)));
      if (overlap.empty() || max_arc_length(overlap) < 3e-3) continue;
      ok = true;
    }
    if (!ok) continue;
    ++built;
    Cone2 k = Cone2::wedge(k0, kw);
    int steps = static_cast<int>(std::ceil(len / 5e-4));
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(steps) + 1);
    double deepest = -kTwoPi;
    for (int s = 0; s <= steps; ++s) {
      double th = a0 + len * static_cast<double>(s) / steps;
      deepest = std::max(deepest, angular_depth(k, th));
      double r = rng.uniform(0.5, 2.0);
      pts.push_back({r * unit_vec(th).x, r * unit_vec(th).y});
    }
    if (deepest < 1e-3) {
      --built;
      continue;
    }
    if (!regularity_check(pts, k, 2e-3)) {
      ++bad;
      if (first.empty()) first = ", first at instance " + std::to_string(i);
    }
  }
  std::vector<Vec2> touch = {{1.0, -1.0}, {1.0, 1.0}};
  bool constructed_false = !regularity_check(touch, Cone2::wedge(kPi / 4.0, kPi / 4.0), 2e-3);
  out.seconds = elapsed_s(t0);
  out.pass = bad == 0 && built > 0 && constructed_false;
  out.detail = std::to_string(built) + " regular instances, " + std::to_string(bad) +
               " false negatives" + first + "; boundary-contact instance reported " +
               (constructed_false ? "irregular" : "regular (wrong)");
  return out;
}

// 7. dual(hull(C n K)) == dual(hull(C)) + dual(K) on hom-convex direction
// sets clipped by wedges, gated by the regularity check.
CheckResult check_clipped_duality(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "clipped hull duality";
  int bad = 0;
  int gate_fail = 0;
  int built = 0;
  std::string first;
  for (int i = 0; i < sc.chain_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 800000 + static_cast<std::uint64_t>(i)));
    int kind = static_cast<int>(rng.index(10));

    AngularSet c;
    std::vector<double> sample_angles;
    bool ok = false;
    double k0 = 0.0;
    double kw = 1.0;
    for (int tries = 0; tries < 500 && !ok; ++tries) {
      k0 = rng.uniform(0.0, kTwoPi);
      kw = rng.uniform(0.2, kPi - 0.01);
      double a0 = rng.uniform(0.0, kTwoPi);
      if (kind <= 6) {
        double len = rng.uniform(0.1, kPi - 0.05);
        if (!well_separated({a0, a0 + len}, k0, k0 + kw)) continue;
        c = AngularSet::from_arcs({Arc{canon_angle(a0), len}});
        sample_angles.clear();
        int steps = static_cast<int>(std::ceil(len / 5e-4));
        for (int s = 0; s <= steps; ++s) {
          sample_angles.push_back(a0 + len * static_cast<double>(s) / steps);
        }
      } else if (kind == 7) {
        if (!well_separated({a0}, k0, k0 + kw)) continue;
        c = AngularSet::from_arcs({Arc{canon_angle(a0), 0.0}});
        sample_angles = {a0};
      } else if (kind == 8) {
        if (!well_separated({a0, a0 + kPi}, k0, k0 + kw)) continue;
        c = AngularSet::from_arcs({Arc{canon_angle(a0), 0.0}, Arc{canon_angle(a0 + kPi), 0.0}});
        sample_angles = {a0, a0 + kPi};
      } else {
        c = AngularSet::full();
        sample_angles.clear();
        int steps = static_cast<int>(std::ceil(kTwoPi / 5e-4));
        for (int s = 0; s < steps; ++s) {
          sample_angles.push_back(kTwoPi * static_cast<double>(s) / steps);
        }
      }
      ok = true;
    }
    if (!ok) continue;
    ++built;
    Cone2 k = Cone2::wedge(k0, kw);

    std::vector<Vec2> pts;
    pts.reserve(sample_angles.size());
    for (double th : sample_angles) pts.push_back(unit_vec(th));
    if (!regularity_check(pts, k, 2e-3)) {
      ++gate_fail;
      if (first.empty()) first = ", first gate failure at instance " + std::to_string(i);
      continue;
    }

    Cone2 lhs = dual(conic_hull(intersect(c, direction_set(k))));
    Cone2 rhs = sum(dual(conic_hull(c)), dual(k));
    if (!cone_eq(lhs, rhs, 1e-12)) {
      ++bad;
      if (first.empty()) first = ", first identity failure at instance " + std::to_string(i);
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = bad == 0 && gate_fail == 0 && built > 0;
  out.detail = std::to_string(built) + " instances, " + std::to_string(gate_fail) +
               " gate rejections, " + std::to_string(bad) + " identity failures" + first;
  return out;
}

std::vector<double> circular_gaps(std::vector<double> angles) {
  std::sort(angles.begin(), angles.end());
  std::vector<double> gaps;
  gaps.reserve(angles.size());
  for (std::size_t i = 1; i < angles.size(); ++i) gaps.push_back(angles[i] - angles[i - 1]);
  if (!angles.empty()) gaps.push_back(angles.front() + kTwoPi - angles.back());
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

std::vector<Vec2> ring_points(Rng& rng, double r_lo, double r_hi) {
  for (int tries = 0; tries < 2000; ++tries) {
    int k = 5 + static_cast<int>(rng.index(8));
    std::vector<double> a(k);
    for (double& x : a) x = rng.uniform(0.0, kTwoPi);
    std::vector<double> gaps = circular_gaps(a);
    if (gaps.front() < 0.05 || gaps.back() > 0.9 * kPi) continue;
    std::vector<Vec2> pts;
    pts.reserve(a.size());
    for (double th : a) {
      double r = rng.uniform(r_lo, r_hi);
      pts.push_back({r * unit_vec(th).x, r * unit_vec(th).y});
    }
    return pts;
  }
  return {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
}

// 8. Boundary samples of a convex polygon have a convex homogenization in
// both placements: origin interior (full circle) and origin outside (wedge
// narrower than a halfplane).
CheckResult check_polygon_boundaries(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "polygon boundary projection";
  int bad = 0;
  int checked = 0;
  std::string first;
  for (int i = 0; i < sc.polygon_instances; ++i) {
    Rng rng(Rng::mix(sc.seed, 900000 + static_cast<std::uint64_t>(i)));
    for (int placement = 0; placement < 2; ++placement) {
      bool inside = placement == 0;
      std::vector<Vec2> pts;
      bool ok = false;
      for (int tries = 0; tries < 200 && !ok; ++tries) {
        pts = ring_points(rng, 0.8, 1.6);
        if (!inside) {
          double d = rng.uniform(2.2, 3.0);
          Vec2 c = unit_vec(rng.uniform(0.0, kTwoPi));
          for (Vec2& p : pts) p = {p.x + d * c.x, p.y + d * c.y};
        }
        ConvexPolygon poly = ConvexPolygon::hull_of(pts);
        bool placed = inside ? poly.contains({0.0, 0.0}, -0.3) : !poly.contains({0.0, 0.0}, 0.3);
        if (!placed) continue;

        std::vector<Vec2> samples = polygon_boundary_sample(poly, 256);
        std::vector<double> angles;
        angles.reserve(samples.size());
        for (Vec2 p : samples) {
          if (norm(p) > 1e-12) angles.push_back(canon_angle(std::atan2(p.y, p.x)));
        }
        std::vector<double> gaps = circular_gaps(angles);
        double widest = gaps.empty() ? 0.0 : gaps.back();
        double second = gaps.size() > 1 ? gaps[gaps.size() - 2] : widest;

        HomConvexOptions ho;
        ho.merge_tol = std::max(kDefaultMergeTol, 2.0 * (inside ? widest : second));
        ho.pair_budget = 40000;  // 256 points stay exhaustive
        ho.seed = Rng::mix(sc.seed, 910000 + static_cast<std::uint64_t>(2 * i + placement));
        HomConvexReport rep = hom_convex_check(samples, 1e-3, 17, ho);
        ++checked;
        if (!rep.homconvex) {
          ++bad;
          if (first.empty()) {
            first = ", first at instance " + std::to_string(i) +
                    (inside ? " (origin inside)" : " (origin outside)");
          }
        }
        ok = true;
      }
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = bad == 0 && checked == 2 * sc.polygon_instances;
  out.detail = std::to_string(checked) + " placements checked, " + std::to_string(bad) +
               " violations" + first;
  return out;
}

QuadraticFunction quadratic_1d(double q, double l, double c) {
  SymMatrix m(1);
  m.set(0, 0, q);
  return make_quadratic(std::move(m), {l}, c);
}

// 9. The two reference instances: a certified pair with known multiplier and
// margin, and a refuted pair whose witness re-verifies.
CheckResult check_worked_instances(const SelftestScale&) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "worked regression";

  QuadraticFunction g1 = quadratic_1d(-1.0, 0.0, 4.0);  // 4 - x^2
  QuadraticFunction h1 = quadratic_1d(-1.0, 0.0, 1.0);  // 1 - x^2
  CertifyResult r1 = certify(g1, h1);
  bool ok1 = r1.verdict == Verdict::Certified && r1.certificate.has_value() &&
             std::fabs(r1.certificate->xi - 2.5) <= 1e-4 &&
             std::fabs(r1.certificate->margin_value - 1.5) <= 1e-6;

  QuadraticFunction g2 = quadratic_1d(0.0, 0.5, -1.0);  // x - 1
  CertifyResult r2 = certify(g2, h1);
  bool ok2 = r2.verdict == Verdict::Refuted && r2.counterexample.has_value();
  if (ok2) {
    double hv = eval(h1, r2.counterexample->x);
    double gv = eval(g2, r2.counterexample->x);
    ok2 = hv >= -1e-9 && gv <= -1e-7;
  }

  out.seconds = elapsed_s(t0);
  out.pass = ok1 && ok2;
  std::string d1 = ok1 ? "certified xi=" + fmtnum(r1.certificate ? r1.certificate->xi : 0.0) +
                             " margin=" + fmtnum(r1.certificate ? r1.certificate->margin_value : 0.0)
                       : "first instance wrong";
  std::string d2 = ok2 ? "refuted with valid witness" : "second instance wrong";
  out.detail = d1 + "; " + d2;
  return out;
}

// 10. Eigendecomposition reconstructs the input matrix.
CheckResult check_eigensolver(const SelftestScale& sc) {
  auto t0 = Clock::now();
  CheckResult out;
  out.name = "eigensolver reconstruction";
  const int dims[] = {2, 5, 10, 20, 35, 50};
  double worst = 0.0;
  int count = 0;
  for (int d : dims) {
    if (d > sc.jacobi_max_dim) continue;
    for (int i = 0; i < sc.jacobi_instances; ++i) {
      Rng rng(Rng::mix(sc.seed, 990000 + static_cast<std::uint64_t>(1000 * d + i)));
      SymMatrix m = random_sym(rng, d);
      EigenDecomposition ed = eigen_sym(m);
      double err2 = 0.0;
      for (int r = 0; r < d; ++r) {
        for (int c = r; c < d; ++c) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) {
            s += ed.eigenvalues[k] * ed.vector_entry(r, k) * ed.vector_entry(c, k);
          }
          double diff = s - m(r, c);
          err2 += (r == c ? 1.0 : 2.0) * diff * diff;
        }
      }
      double rel = std::sqrt(err2) / std::max(1.0, m.frob_norm());
      worst = std::max(worst, rel);
      ++count;
    }
  }
  out.seconds = elapsed_s(t0);
  out.pass = worst <= 1e-9 && count > 0;
  out.detail = std::to_string(count) + " matrices, worst relative error " + fmtnum(worst);
  return out;
}

}  // namespace

SelftestScale full_scale() { return SelftestScale{}; }

SelftestScale quick_scale() {
  SelftestScale sc;
  sc.slemma_instances = 50;
  sc.oracle_budget = 800;
  sc.cone_pairs = 1000;
  sc.curve_instances = 20;
  sc.curve_samples = 2000;
  sc.concavity_instances = 20;
  sc.concavity_triples = 20;
  sc.psd_instances = 50;
  sc.regularity_instances = 100;
  sc.chain_instances = 100;
  sc.polygon_instances = 10;
  sc.jacobi_instances = 5;
  return sc;
}

std::vector<CheckResult> run_all(const SelftestScale& scale, std::ostream* log) {
  std::vector<CheckResult> out;
  auto push = [&](CheckResult r) {
    if (log) {
      char secs[48];
      std::snprintf(secs, sizeof(secs), "%.2f", r.seconds);
      *log << (r.pass ? "[PASS] " : "[FAIL] ") << out.size() + 1 << ". " << r.name << " ("
           << r.detail << ") (" << secs << "s)" << std::endl;
    }
    out.push_back(std::move(r));
  };
  push(check_dichotomy(scale));
  push(check_dual_calculus(scale));
  push(check_curve_convexity(scale));
  push(check_margin_concavity(scale));
  push(check_psd_lifting(scale));
  push(check_regularity(scale));
  push(check_clipped_duality(scale));
  push(check_polygon_boundaries(scale));
  push(check_worked_instances(scale));
  push(check_eigensolver(scale));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return !results.empty();
}

}  // namespace sproc
