// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sproc/quadcurve.hpp"
#include "sproc/vec.hpp"

namespace sproc {

inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kTwoPi = 6.28318530717958647692528676656;
inline constexpr double kTolAng = 1e-12;
inline constexpr double kDefaultMergeTol = kTwoPi / 4096.0;

double canon_angle(double theta);             // reduce to [0, 2*pi)
double angle_dist(double a, double b);        // circular distance, in [0, pi]
Vec2 unit_vec(double theta);

// Closed convex cone in R^2 in canonical form: the origin, a single ray, a
// line through 0, an angular wedge of width in (0, pi] (width pi is a closed
// halfplane), or the whole plane.
class Cone2 {
 public:
  enum class Kind { Zero, Ray, Line, Wedge, Plane };

  static Cone2 zero() { return Cone2(Kind::Zero, 0.0, 0.0); }
  static Cone2 plane() { return Cone2(Kind::Plane, 0.0, 0.0); }
  static Cone2 ray(double theta);
  static Cone2 line(double theta);              // canonical angle in [0, pi)
  static Cone2 wedge(double lo, double width);  // snaps width <= tol to a ray

  Kind kind() const { return kind_; }
  double angle() const { return a_; }  // Ray and Line
  double lo() const { return a_; }     // Wedge
  double width() const { return w_; }  // Wedge
  double hi() const { return a_ + w_; }

 private:
  Cone2(Kind k, double a, double w) : kind_(k), a_(a), w_(w) {}
  Kind kind_;
  double a_;
  double w_;
};

bool cone_eq(const Cone2& a, const Cone2& b, double tol = kTolAng);

Cone2 dual(const Cone2& k);
Cone2 intersect(const Cone2& a, const Cone2& b);
Cone2 sum(const Cone2& a, const Cone2& b);  // smallest closed convex cone containing both
bool contains(const Cone2& k, Vec2 x, double tol);

// Signed angular depth of direction theta in k: positive inside, negative
// outside, zero on the boundary. Cones with empty interior never give a
// positive value.
double angular_depth(const Cone2& k, double theta);

struct Arc {
  double start = 0.0;   // in [0, 2*pi)
  double length = 0.0;  // in [0, 2*pi]
};

// Finite union of disjoint closed arcs on the unit circle, sorted by start;
// the full circle is a single arc of length 2*pi.
class AngularSet {
 public:
  AngularSet() = default;
  static AngularSet full();
  static AngularSet from_angles(std::span<const double> angles, double merge_tol);
  static AngularSet from_arcs(std::vector<Arc> arcs, double merge_tol = kTolAng);

  bool empty() const { return arcs_.empty(); }
  bool full_circle() const;
  const std::vector<Arc>& arcs() const { return arcs_; }

  double distance(double theta) const;  // 0 when covered; pi for the empty set
  bool contains(double theta, double tol) const { return distance(theta) <= tol; }

 private:
  std::vector<Arc> arcs_;
};

AngularSet intersect(const AngularSet& a, const AngularSet& b);
AngularSet direction_set(const Cone2& k);

// Projects points to the unit circle, dropping those with norm <= tol_origin,
// and merges angles closer than merge_tol into arcs.
AngularSet spherical_project(std::span<const Vec2> points, double tol_origin = 1e-12,
                             double merge_tol = kDefaultMergeTol);

// Smallest closed convex cone whose directions cover s.
Cone2 conic_hull(const AngularSet& s);

// True when s is an arc of length <= pi, a single antipodal pair of
// directions, empty, or the full circle. These are exactly the direction sets
// of sets whose homogenization is convex.
bool spherically_convex(const AngularSet& s, double tol = kTolAng);

struct HomConvexOptions {
  double tol_origin = 1e-12;
  double merge_tol = kDefaultMergeTol;
  std::size_t pair_budget = 20000;  // pairs sampled when the full set is too large
  std::uint64_t seed = 0x5eed5eed;
};

struct HomConvexViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  double t = 0.0;       // segment parameter of the offending sample
  double angle = 0.0;   // its direction
  double distance = 0.0;
};

struct HomConvexReport {
  bool homconvex = true;
  std::optional<HomConvexViolation> violation;
  std::size_t pairs_checked = 0;
};

// Epsilon-checker for convexity of the homogenization: samples segments
// between input points and requires every projected sample to sit within eps
// of the reference angular set. A violation is exact; a pass certifies the
// property only up to the sampling resolution (eps, segment_samples).
HomConvexReport hom_convex_check(std::span<const Vec2> points, double eps, int segment_samples,
                                 const HomConvexOptions& opts = {});
HomConvexReport hom_convex_check(std::span<const Vec2> points, const AngularSet& reference,
                                 double eps, int segment_samples,
                                 const HomConvexOptions& opts = {});

struct CurveSamplingPlan {
  double t_max = 10.0;       // symmetric parameter range [-t_max, t_max]
  int count = 1024;          // initial uniform sample count
  double refine_target = 0;  // angular gap target; 0 means merge_tol / 2
  double merge_tol = kDefaultMergeTol;
  double tol_origin = 1e-12;
  std::size_t max_points = 300000;
};

// Direction set swept by the curve. Samples the plan's range, refines between
// samples until neighboring angles agree to the target, extends the range
// geometrically until the tail angle settles, and appends the asymptotic
// direction(s) explicitly.
AngularSet curve_angular_set(const QuadCurve2& c, const CurveSamplingPlan& plan = {});

// The refined sample points behind curve_angular_set, for segment checks.
std::vector<Vec2> sample_curve(const QuadCurve2& c, const CurveSamplingPlan& plan = {});

// Compares the cone generated by the points inside k against the cone of all
// points clipped to k. Membership keeps points strictly inside k (boundary
// contact does not count); cones with empty interior use boundary membership
// instead. The two hulls must agree within tol.
bool regularity_check(std::span<const Vec2> points, const Cone2& k, double tol);

struct LinearForm2 {
  double u1 = 0.0;
  double u2 = 0.0;
  double operator()(Vec2 v) const { return u1 * v.x + u2 * v.y; }
};

struct SProcedure2DResult {
  std::optional<double> xi;      // least feasible multiplier when one exists
  std::optional<Vec2> witness;   // direction with phi >= 0, psi < 0 otherwise
};

// Finds the least xi >= 0 with psi - xi*phi nonnegative on conic_hull(c), by
// the extreme-ray inequalities of the hull. Requires a direction of c with
// phi > tol (SlaterViolatedError otherwise). The plane-degenerate case is
// solved exactly as a linear dependence.
SProcedure2DResult sprocedure_2d(const AngularSet& c, LinearForm2 psi, LinearForm2 phi,
                                 double tol);

// Bounded convex polygon; vertices counter-clockwise, consecutive collinear
// vertices merged at construction.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);
  static ConvexPolygon hull_of(std::span<const Vec2> points);

  const std::vector<Vec2>& vertices() const { return v_; }
  double perimeter() const;
  bool contains(Vec2 p, double tol = 0.0) const;

 private:
  ConvexPolygon() = default;
  std::vector<Vec2> v_;
};

// Smallest tau >= 0 with tau*v in p; +inf when the ray misses p. Throws
// ZeroDirectionError when v = 0.
double gauge_inf(const ConvexPolygon& p, Vec2 v);
// Largest such tau; 0 when the ray only meets p at the origin. Throws
// RayMissesPolygonError when the ray misses p entirely.
double gauge_sup(const ConvexPolygon& p, Vec2 v);

// m >= vertex count; vertices always included, remaining points distributed
// along the boundary proportionally to edge length.
std::vector<Vec2> polygon_boundary_sample(const ConvexPolygon& p, int m);

}  // namespace sproc
