// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sproc/cone2d.hpp"
#include "sproc/errors.hpp"
#include "sproc/rng.hpp"

using namespace sproc;

namespace {

std::vector<double> cone_dirs(const Cone2& k, int per_wedge = 200) {
  std::vector<double> out;
  switch (k.kind()) {
    case Cone2::Kind::Zero:
      break;
    case Cone2::Kind::Ray:
      out.push_back(k.angle());
      break;
    case Cone2::Kind::Line:
      out.push_back(k.angle());
      out.push_back(k.angle() + kPi);
      break;
    case Cone2::Kind::Wedge:
      for (int j = 0; j <= per_wedge; ++j) {
        out.push_back(k.lo() + k.width() * j / per_wedge);
      }
      break;
    case Cone2::Kind::Plane:
      for (int j = 0; j < 720; ++j) out.push_back(kTwoPi * j / 720);
      break;
  }
  return out;
}

}  // namespace

TEST_CASE("canon_angle reduces into [0, 2pi)") {
  CHECK(canon_angle(0.0) == 0.0);
  CHECK(canon_angle(kTwoPi) == 0.0);
  CHECK(canon_angle(-kPi / 2) == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  CHECK(canon_angle(7 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
  double big = canon_angle(1e9);
  CHECK(big >= 0.0);
  CHECK(big < kTwoPi);
  CHECK_THROWS_AS(canon_angle(std::nan("")), NonFiniteError);
  CHECK_THROWS_AS(canon_angle(HUGE_VAL), NonFiniteError);
}

TEST_CASE("angle_dist is the circular metric") {
  CHECK(angle_dist(0.1, kTwoPi - 0.1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(angle_dist(0.0, kPi) == doctest::Approx(kPi));
  CHECK(angle_dist(1.0, 1.0) == 0.0);
  CHECK(angle_dist(0.25, 1.0) == angle_dist(1.0, 0.25));
}

TEST_CASE("factories canonicalize angles") {
  CHECK(Cone2::ray(-kPi / 2).angle() == doctest::Approx(1.5 * kPi));
  CHECK(Cone2::line(1.5 * kPi).angle() == doctest::Approx(kPi / 2));
  Cone2 w = Cone2::wedge(1.0, 0.5);
  CHECK(w.kind() == Cone2::Kind::Wedge);
  CHECK(w.lo() == doctest::Approx(1.0));
  CHECK(w.width() == doctest::Approx(0.5));
  CHECK(w.hi() == doctest::Approx(1.5));

  // zero width snaps to a ray; near-pi width snaps to a halfplane
  CHECK(Cone2::wedge(1.0, 0.0).kind() == Cone2::Kind::Ray);
  CHECK(Cone2::wedge(1.0, 0.0).angle() == doctest::Approx(1.0));
  CHECK(Cone2::wedge(0.0, kPi - 1e-14).width() == kPi);
  CHECK_THROWS_AS(Cone2::wedge(0.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(Cone2::wedge(0.0, kPi + 1e-6), std::invalid_argument);
}

TEST_CASE("cone_eq tolerates wraparound and line symmetry") {
  CHECK(cone_eq(Cone2::ray(0.0), Cone2::ray(kTwoPi - 1e-13)));
  CHECK_FALSE(cone_eq(Cone2::ray(0.0), Cone2::ray(1e-3)));
  CHECK(cone_eq(Cone2::line(1e-13), Cone2::line(kPi - 1e-13)));
  CHECK(cone_eq(Cone2::zero(), Cone2::zero()));
  CHECK_FALSE(cone_eq(Cone2::zero(), Cone2::plane()));
  CHECK(cone_eq(Cone2::ray(0.0), Cone2::ray(1e-3), 1e-2));
}

TEST_CASE("dual follows the closed-form table") {
  CHECK(dual(Cone2::zero()).kind() == Cone2::Kind::Plane);
  CHECK(dual(Cone2::plane()).kind() == Cone2::Kind::Zero);
  CHECK(cone_eq(dual(Cone2::ray(0.0)), Cone2::wedge(-kPi / 2, kPi)));
  CHECK(cone_eq(dual(Cone2::line(0.0)), Cone2::line(kPi / 2)));
  CHECK(cone_eq(dual(Cone2::wedge(kPi / 4, kPi / 4)), Cone2::wedge(0.0, 3 * kPi / 4)));
  CHECK(cone_eq(dual(Cone2::wedge(0.0, kPi)), Cone2::ray(kPi / 2)));
}

TEST_CASE("dual is an involution on every variant") {
  for (const Cone2& k : {Cone2::zero(), Cone2::plane(), Cone2::ray(0.7), Cone2::line(2.0),
                         Cone2::wedge(0.3, 1.2), Cone2::wedge(1.0, kPi), Cone2::wedge(5.9, 0.8)}) {
    CHECK(cone_eq(dual(dual(k)), k));
  }
}

TEST_CASE("dual matches brute-force membership on a grid") {
  for (const Cone2& k : {Cone2::ray(0.7), Cone2::wedge(0.3, 1.2), Cone2::line(2.0),
                         Cone2::wedge(1.0, kPi), Cone2::zero(), Cone2::plane()}) {
    Cone2 d = dual(k);
    std::vector<double> dirs = cone_dirs(k);
    for (int i = 0; i < 360; ++i) {
      double th = kTwoPi * i / 360;
      if (std::fabs(angular_depth(d, th)) <= 2e-2) continue;  // grid cannot resolve boundary
      Vec2 u = unit_vec(th);
      bool brute = true;
      for (double phi : dirs) {
        if (dot(u, unit_vec(phi)) < -1e-6) {
          brute = false;
          break;
        }
      }
      CHECK(contains(d, u, 1e-9) == brute);
    }
  }
}

TEST_CASE("dual reverses inclusion") {
  struct Pair {
    Cone2 small;
    Cone2 big;
  };
  for (const Pair& p : {Pair{Cone2::ray(0.5), Cone2::wedge(0.3, 1.0)},
                        Pair{Cone2::wedge(0.4, 0.5), Cone2::wedge(0.3, 1.0)},
                        Pair{Cone2::line(0.3), Cone2::plane()}}) {
    for (int i = 0; i < 720; ++i) {
      double th = kTwoPi * i / 720;
      if (angular_depth(p.small, th) >= 0.0) CHECK(angular_depth(p.big, th) >= -1e-9);
      if (angular_depth(dual(p.big), th) >= 0.0) CHECK(angular_depth(dual(p.small), th) >= -1e-9);
    }
  }
}

TEST_CASE("intersect resolves overlaps and degeneracies") {
  CHECK(cone_eq(intersect(Cone2::wedge(0.0, kPi / 2), Cone2::wedge(kPi / 4, 3 * kPi / 4)),
                Cone2::wedge(kPi / 4, kPi / 4)));
  CHECK(intersect(Cone2::ray(0.0), Cone2::ray(kPi)).kind() == Cone2::Kind::Zero);
  CHECK(cone_eq(intersect(Cone2::line(0.0), Cone2::wedge(-kPi / 4, kPi / 2)), Cone2::ray(0.0)));
  CHECK(cone_eq(intersect(Cone2::plane(), Cone2::wedge(1.0, 0.5)), Cone2::wedge(1.0, 0.5)));
  CHECK(intersect(Cone2::zero(), Cone2::plane()).kind() == Cone2::Kind::Zero);
  CHECK(intersect(Cone2::wedge(0.0, kPi / 2), Cone2::wedge(kPi, kPi / 2)).kind() ==
        Cone2::Kind::Zero);
  CHECK(intersect(Cone2::line(0.0), Cone2::line(kPi / 2)).kind() == Cone2::Kind::Zero);
  CHECK(cone_eq(intersect(Cone2::line(0.0), Cone2::wedge(0.0, kPi)), Cone2::line(0.0)));
}

TEST_CASE("sum builds the conic hull of the union") {
  CHECK(cone_eq(sum(Cone2::ray(0.0), Cone2::ray(kPi)), Cone2::line(0.0)));
  CHECK(cone_eq(sum(Cone2::ray(0.0), Cone2::ray(kPi / 2)), Cone2::wedge(0.0, kPi / 2)));
  CHECK(sum(Cone2::wedge(0.0, kPi / 2), Cone2::wedge(3 * kPi / 4, kPi / 2)).kind() ==
        Cone2::Kind::Plane);
  CHECK(cone_eq(sum(Cone2::zero(), Cone2::wedge(1.0, 0.5)), Cone2::wedge(1.0, 0.5)));
  CHECK(sum(Cone2::plane(), Cone2::ray(1.0)).kind() == Cone2::Kind::Plane);
  CHECK(cone_eq(sum(Cone2::ray(0.0), Cone2::ray(1e-13)), Cone2::ray(0.0), 1e-9));
  CHECK(cone_eq(sum(Cone2::ray(0.0), Cone2::ray(kPi - 1e-13)), Cone2::wedge(0.0, kPi), 1e-9));
  CHECK(cone_eq(sum(Cone2::ray(0.0), Cone2::ray(kPi + 0.1)), Cone2::wedge(kPi + 0.1, kPi - 0.1),
                1e-9));
  CHECK(cone_eq(sum(Cone2::line(0.0), Cone2::ray(kPi / 2)), Cone2::wedge(0.0, kPi)));
}

TEST_CASE("angular_depth signs membership") {
  CHECK(angular_depth(Cone2::wedge(0.0, kPi / 2), kPi / 4) == doctest::Approx(kPi / 4));
  CHECK(angular_depth(Cone2::wedge(0.0, kPi / 2), kPi) == doctest::Approx(-kPi / 2));
  CHECK(angular_depth(Cone2::wedge(0.0, kPi / 2), 0.0) == doctest::Approx(0.0));
  CHECK(angular_depth(Cone2::ray(0.0), 0.3) == doctest::Approx(-0.3));
  CHECK(angular_depth(Cone2::plane(), 2.2) == doctest::Approx(kPi));
  CHECK(angular_depth(Cone2::zero(), 2.2) == doctest::Approx(-kPi));
  CHECK(angular_depth(Cone2::line(0.0), kPi) == doctest::Approx(0.0));
}

TEST_CASE("contains accepts the origin and respects tolerance") {
  CHECK(contains(Cone2::zero(), Vec2{0.0, 0.0}, 0.0));
  CHECK(contains(Cone2::ray(0.0), Vec2{1.0, 0.0}, 0.0));
  CHECK(contains(Cone2::wedge(0.0, kPi / 2), Vec2{1.0, 1.0}, 0.0));
  CHECK_FALSE(contains(Cone2::wedge(0.0, kPi / 2), Vec2{1.0, -1.0}, 0.0));
  CHECK(contains(Cone2::wedge(0.0, kPi / 2), Vec2{1.0, -1e-4}, 1e-3));
}

TEST_CASE("from_angles merges nearby directions and wraps") {
  AngularSet s = AngularSet::from_angles(std::vector<double>{0.0, 0.001, kPi}, 0.01);
  REQUIRE(s.arcs().size() == 2);
  CHECK(s.arcs()[0].start == doctest::Approx(0.0));
  CHECK(s.arcs()[0].length == doctest::Approx(0.001));
  CHECK(s.arcs()[1].start == doctest::Approx(kPi));
  CHECK(s.arcs()[1].length == doctest::Approx(0.0));

  AngularSet w = AngularSet::from_angles(std::vector<double>{kTwoPi - 0.001, 0.001}, 0.01);
  REQUIRE(w.arcs().size() == 1);
  CHECK(w.arcs()[0].start == doctest::Approx(kTwoPi - 0.001));
  CHECK(w.arcs()[0].length == doctest::Approx(0.002));
  CHECK(w.contains(0.0, 1e-9));
}

TEST_CASE("from_arcs drops negatives and recognizes the full circle") {
  AngularSet s = AngularSet::from_arcs({{0.0, -0.1}, {1.0, 0.2}});
  REQUIRE(s.arcs().size() == 1);
  CHECK(s.arcs()[0].start == doctest::Approx(1.0));
  CHECK(AngularSet::from_arcs({{0.0, kTwoPi}}).full_circle());
  CHECK(AngularSet::full().full_circle());
  CHECK(AngularSet().empty());
}

TEST_CASE("distance is circular and pi on the empty set") {
  AngularSet s = AngularSet::from_arcs({{0.0, 1.0}});
  CHECK(s.distance(0.5) == 0.0);
  CHECK(s.distance(1.5) == doctest::Approx(0.5));
  CHECK(s.distance(kTwoPi - 0.2) == doctest::Approx(0.2));
  CHECK(AngularSet().distance(1.0) == doctest::Approx(kPi));
}

TEST_CASE("angular set intersection handles wrapping arcs") {
  AngularSet a = AngularSet::from_arcs({{1.5 * kPi, kPi}});  // [3pi/2, 2pi) u [0, pi/2]
  AngularSet b = AngularSet::from_arcs({{1.0, 1.0}});        // [1, 2]
  AngularSet c = intersect(a, b);
  REQUIRE(c.arcs().size() == 1);
  CHECK(c.arcs()[0].start == doctest::Approx(1.0));
  CHECK(c.arcs()[0].length == doctest::Approx(kPi / 2 - 1.0));

  AngularSet d = intersect(AngularSet::from_arcs({{0.0, 1.0}}), AngularSet::from_arcs({{2.0, 1.0}}));
  CHECK(d.empty());
}

TEST_CASE("spherical_project drops the origin and merges rays") {
  std::vector<Vec2> two{{1.0, 0.0}, {2.0, 0.0}};
  AngularSet s = spherical_project(two);
  REQUIRE(s.arcs().size() == 1);
  CHECK(s.arcs()[0].start == doctest::Approx(0.0));
  CHECK(s.arcs()[0].length == doctest::Approx(0.0));

  std::vector<Vec2> zero{{0.0, 0.0}};
  CHECK(spherical_project(zero).empty());

  std::vector<Vec2> three{{1.0, 0.0}, {0.0, 3.0}, {1.0, 1.0}};
  AngularSet t = spherical_project(three, 1e-12, 0.01);
  REQUIRE(t.arcs().size() == 3);
  CHECK(t.arcs()[0].start == doctest::Approx(0.0));
  CHECK(t.arcs()[1].start == doctest::Approx(kPi / 4));
  CHECK(t.arcs()[2].start == doctest::Approx(kPi / 2));
}

TEST_CASE("direction_set inverts the cone variants") {
  CHECK(direction_set(Cone2::zero()).empty());
  CHECK(direction_set(Cone2::plane()).full_circle());
  AngularSet r = direction_set(Cone2::ray(1.0));
  REQUIRE(r.arcs().size() == 1);
  CHECK(r.arcs()[0].length == doctest::Approx(0.0));
  AngularSet l = direction_set(Cone2::line(1.0));
  CHECK(l.arcs().size() == 2);
  AngularSet w = direction_set(Cone2::wedge(0.5, 1.0));
  REQUIRE(w.arcs().size() == 1);
  CHECK(w.arcs()[0].start == doctest::Approx(0.5));
  CHECK(w.arcs()[0].length == doctest::Approx(1.0));
}

TEST_CASE("conic_hull classifies degenerate and spanning sets") {
  CHECK(conic_hull(AngularSet()).kind() == Cone2::Kind::Zero);
  CHECK(conic_hull(AngularSet::full()).kind() == Cone2::Kind::Plane);
  CHECK(cone_eq(conic_hull(AngularSet::from_angles(std::vector<double>{0.0}, kTolAng)),
                Cone2::ray(0.0)));
  CHECK(cone_eq(conic_hull(AngularSet::from_angles(std::vector<double>{0.0, kPi}, kTolAng)),
                Cone2::line(0.0)));
  CHECK(cone_eq(conic_hull(AngularSet::from_angles(std::vector<double>{0.0, kPi / 2}, kTolAng)),
                Cone2::wedge(0.0, kPi / 2)));
  CHECK(conic_hull(AngularSet::from_angles(
            std::vector<double>{0.0, 2 * kPi / 3, 4 * kPi / 3}, kTolAng))
            .kind() == Cone2::Kind::Plane);
  CHECK(cone_eq(conic_hull(AngularSet::from_arcs({{0.0, kPi}})), Cone2::wedge(0.0, kPi)));
  CHECK(cone_eq(conic_hull(AngularSet::from_arcs({{0.25, 0.5}})), Cone2::wedge(0.25, 0.5)));
}

TEST_CASE("spherically_convex matches the classification") {
  CHECK(spherically_convex(AngularSet()));
  CHECK(spherically_convex(AngularSet::full()));
  CHECK(spherically_convex(AngularSet::from_arcs({{0.0, 1.0}})));
  CHECK(spherically_convex(AngularSet::from_angles(std::vector<double>{0.0, kPi}, kTolAng)));
  CHECK_FALSE(spherically_convex(AngularSet::from_angles(std::vector<double>{0.0, kPi / 2}, kTolAng)));
  CHECK_FALSE(spherically_convex(AngularSet::from_arcs({{0.0, kPi + 0.5}})));
}

TEST_CASE("hom_convex_check flags the two-point counterexample") {
  std::vector<Vec2> pts{{1.0, 0.0}, {0.0, 1.0}};
  HomConvexReport rep = hom_convex_check(pts, 1e-3, 3);
  CHECK_FALSE(rep.homconvex);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->angle == doctest::Approx(kPi / 4).epsilon(1e-9));
  CHECK(rep.violation->distance == doctest::Approx(kPi / 4).epsilon(1e-6));
  CHECK(rep.violation->t == doctest::Approx(0.5));
}

TEST_CASE("hom_convex_check trivial passes and argument validation") {
  std::vector<Vec2> one{{2.0, 3.0}};
  CHECK(hom_convex_check(one, 1e-3, 5).homconvex);
  std::vector<Vec2> pts{{1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(hom_convex_check(pts, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(hom_convex_check(pts, 1e-3, 1), std::invalid_argument);
}

TEST_CASE("parabola samples with recession direction are hom-convex") {
  std::vector<Vec2> pts;
  for (int k = 0; k < 100; ++k) {
    double t = -10.0 + 20.0 * k / 99.0;
    pts.push_back({t, t * t});
  }
  pts.push_back({0.0, 1.0});
  pts.push_back({0.0, 5.0});

  // reference from the exact curve sweep
  QuadCurve2 c;
  c.a = {0.0, 1.0, 0.0};
  c.b = {0.0, 0.0, 1.0};
  AngularSet ref = curve_angular_set(c);
  CHECK(hom_convex_check(pts, ref, 1e-3, 17).homconvex);

  // reference from the points themselves, merged at the sampling resolution
  HomConvexOptions opts;
  opts.merge_tol = 0.25;
  CHECK(hom_convex_check(pts, 1e-3, 17, opts).homconvex);
}

TEST_CASE("curve_angular_set sweeps the half-turn of (t^2, t)") {
  QuadCurve2 c;
  c.a = {0.0, 0.0, 1.0};
  c.b = {0.0, 1.0, 0.0};
  AngularSet s = curve_angular_set(c);
  CHECK(s.contains(0.0, 1e-9));  // recession direction appended exactly
  CHECK(s.contains(kPi / 2, 1e-3));
  CHECK(s.contains(1.5 * kPi, 1e-3));
  CHECK_FALSE(s.contains(kPi, 1e-3));
  CHECK(cone_eq(conic_hull(s), Cone2::wedge(1.5 * kPi, kPi), 1e-3));
}

TEST_CASE("curve_angular_set on a line through the origin") {
  QuadCurve2 c;
  c.a = {0.0, 1.0, 0.0};
  c.b = {0.0, 1.0, 0.0};
  AngularSet s = curve_angular_set(c);
  CHECK(s.contains(kPi / 4, 1e-9));
  CHECK(s.contains(1.25 * kPi, 1e-9));
  CHECK(spherically_convex(s, 1e-9));
  CHECK(cone_eq(conic_hull(s), Cone2::line(kPi / 4), 1e-9));
}

TEST_CASE("curve_angular_set on a constant curve") {
  QuadCurve2 c;
  c.a = {1.0, 0.0, 0.0};
  AngularSet s = curve_angular_set(c);
  REQUIRE_FALSE(s.empty());
  CHECK(s.contains(0.0, 1e-9));
  CHECK(cone_eq(conic_hull(s), Cone2::ray(0.0), 1e-9));
}

TEST_CASE("sample_curve returns finite on-curve points") {
  QuadCurve2 c;
  c.a = {0.0, 0.0, 1.0};
  c.b = {0.0, 1.0, 0.0};
  std::vector<Vec2> pts = sample_curve(c);
  CHECK(pts.size() >= 8);
  for (const Vec2& p : pts) {
    CHECK(std::isfinite(p.x));
    CHECK(std::isfinite(p.y));
    CHECK(p.x == doctest::Approx(p.y * p.y).epsilon(1e-9));  // on a(t)=t^2, b(t)=t
  }
}

TEST_CASE("regularity_check separates clipped and unclipped hulls") {
  // no point reaches the wedge interior: clipped hull Zero, intersected hull Ray
  std::vector<Vec2> pts{{1.0, -1.0}, {1.0, 1.0}};
  CHECK_FALSE(regularity_check(pts, Cone2::wedge(kPi / 4, kPi / 4), 1e-9));

  // the plane clips nothing
  CHECK(regularity_check(pts, Cone2::plane(), 1e-9));

  // strictly interior points agree on both sides
  std::vector<Vec2> in{{1.0, 0.5}, {0.5, 1.0}};
  CHECK(regularity_check(in, Cone2::wedge(0.0, kPi / 2), 1e-9));
}

TEST_CASE("sprocedure_2d on the quadrant") {
  AngularSet quadrant = AngularSet::from_arcs({{0.0, kPi / 2}});

  SProcedure2DResult r = sprocedure_2d(quadrant, {0.0, 1.0}, {1.0, 0.0}, 1e-9);
  REQUIRE(r.xi.has_value());
  CHECK(*r.xi == doctest::Approx(0.0));
  CHECK_FALSE(r.witness.has_value());

  r = sprocedure_2d(quadrant, {0.0, -1.0}, {1.0, 0.0}, 1e-9);
  CHECK_FALSE(r.xi.has_value());
  REQUIRE(r.witness.has_value());
  CHECK(std::fabs(r.witness->x) <= 1e-9);
  CHECK(r.witness->y == doctest::Approx(1.0).epsilon(1e-9));

  // binding at both extreme rays
  r = sprocedure_2d(quadrant, {1.0, -1.0}, {1.0, -1.0}, 1e-9);
  REQUIRE(r.xi.has_value());
  CHECK(*r.xi == doctest::Approx(1.0).epsilon(1e-9));

  // infeasible interval with an interior witness
  r = sprocedure_2d(quadrant, {0.0, -1.0}, {1.0, -1.0}, 1e-9);
  CHECK_FALSE(r.xi.has_value());
  REQUIRE(r.witness.has_value());
  LinearForm2 psi{0.0, -1.0};
  LinearForm2 phi{1.0, -1.0};
  CHECK(psi(*r.witness) < 0.0);
  CHECK(phi(*r.witness) >= -1e-9);

  CHECK_THROWS_AS(sprocedure_2d(quadrant, {0.0, 1.0}, {-1.0, 0.0}, 1e-9), SlaterViolatedError);
  CHECK_THROWS_AS(sprocedure_2d(AngularSet(), {0.0, 1.0}, {1.0, 0.0}, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("sprocedure_2d on a single ray and on a plane-spanning set") {
  AngularSet single = AngularSet::from_angles(std::vector<double>{0.0}, kTolAng);
  SProcedure2DResult r = sprocedure_2d(single, {-1.0, 0.0}, {1.0, 0.0}, 1e-9);
  CHECK_FALSE(r.xi.has_value());
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->x == doctest::Approx(1.0).epsilon(1e-9));

  AngularSet spanning =
      AngularSet::from_angles(std::vector<double>{0.0, 2 * kPi / 3, 4 * kPi / 3}, kTolAng);
  r = sprocedure_2d(spanning, {1.0, 0.0}, {1.0, 0.0}, 1e-9);
  REQUIRE(r.xi.has_value());
  CHECK(*r.xi == doctest::Approx(1.0).epsilon(1e-9));

  r = sprocedure_2d(spanning, {0.0, 1.0}, {1.0, 0.0}, 1e-9);
  CHECK_FALSE(r.xi.has_value());
  REQUIRE(r.witness.has_value());
  LinearForm2 psi{0.0, 1.0};
  LinearForm2 phi{1.0, 0.0};
  CHECK(psi(*r.witness) < 0.0);
  CHECK(phi(*r.witness) >= -1e-9);
}

TEST_CASE("polygon construction canonicalizes the vertex list") {
  ConvexPolygon sq({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CHECK(sq.vertices().size() == 4);
  CHECK(sq.perimeter() == doctest::Approx(4.0));

  ConvexPolygon cw({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}});
  CHECK(cw.vertices().size() == 4);
  CHECK(cw.contains({0.5, 0.5}, 0.0));

  ConvexPolygon collinear({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}});
  CHECK(collinear.vertices().size() == 3);

  CHECK_THROWS_AS(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {1.0 - 1e-15, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ConvexPolygon({{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {1.0, 0.5}, {0.0, 2.0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(ConvexPolygon({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("hull_of strips interior points") {
  std::vector<Vec2> pts{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.5, 0.5}, {0.2, 0.8}};
  ConvexPolygon h = ConvexPolygon::hull_of(pts);
  CHECK(h.vertices().size() == 4);
  std::vector<Vec2> flat{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  CHECK_THROWS_AS(ConvexPolygon::hull_of(flat), std::invalid_argument);
}

TEST_CASE("polygon contains supports inner margins") {
  ConvexPolygon sq({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CHECK(sq.contains({0.5, 0.5}, 0.0));
  CHECK(sq.contains({1.0, 0.5}, 0.0));
  CHECK_FALSE(sq.contains({1.000001, 0.5}, 0.0));
  CHECK(sq.contains({1.000001, 0.5}, 1e-3));
  CHECK_FALSE(sq.contains({0.99, 0.5}, -0.02));
  CHECK(sq.contains({0.5, 0.5}, -0.4));
}

TEST_CASE("gauges measure ray entry and exit") {
  ConvexPolygon centered({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}});
  CHECK(gauge_inf(centered, {1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(gauge_sup(centered, {1.0, 0.0}) == doctest::Approx(1.0));

  ConvexPolygon off({{1.0, -1.0}, {2.0, -1.0}, {2.0, 1.0}, {1.0, 1.0}});
  CHECK(gauge_inf(off, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(gauge_sup(off, {1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(gauge_inf(off, {2.0, 0.0}) == doctest::Approx(0.5));  // scales with the direction
  CHECK(std::isinf(gauge_inf(off, {0.0, 1.0})));
  CHECK_THROWS_AS(gauge_sup(off, {0.0, 1.0}), RayMissesPolygonError);
  CHECK_THROWS_AS(gauge_inf(off, {0.0, 0.0}), ZeroDirectionError);
}

TEST_CASE("polygon_boundary_sample includes vertices and stays on the boundary") {
  ConvexPolygon tri({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  std::vector<Vec2> three = polygon_boundary_sample(tri, 3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].x == 0.0);
  CHECK(three[1].x == 1.0);
  CHECK(three[2].y == 1.0);
  CHECK_THROWS_AS(polygon_boundary_sample(tri, 2), std::invalid_argument);

  ConvexPolygon sq({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  std::vector<Vec2> eight = polygon_boundary_sample(sq, 8);
  REQUIRE(eight.size() == 8);
  std::vector<Vec2> expect{{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {1.0, 0.5},
                           {1.0, 1.0}, {0.5, 1.0}, {0.0, 1.0}, {0.0, 0.5}};
  for (const Vec2& e : expect) {
    bool found = false;
    for (const Vec2& p : eight) {
      if (norm(p - e) <= 1e-12) found = true;
    }
    CHECK(found);
  }
  for (const Vec2& p : eight) {
    CHECK(sq.contains(p, 1e-12));
    CHECK_FALSE(sq.contains(p, -1e-6));
  }
}
