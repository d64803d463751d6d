// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sproc/cone2d.hpp"
#include "sproc/errors.hpp"
#include "sproc/io.hpp"
#include "sproc/quadform.hpp"
#include "sproc/selftest.hpp"
#include "sproc/slemma.hpp"

namespace {

using namespace sproc;

double parse_number(const std::string& s, const char* what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(std::string(what) + ": not a number: " + s);
  }
  return v;
}

VecN parse_vector(const std::string& s, const char* what) {
  VecN out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(parse_number(item, what));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

double to_radians(double v, bool radians) { return radians ? v : v * kPi / 180.0; }

std::string fmt_angle(double rad, bool radians) {
  return format_sig(radians ? rad : rad * 180.0 / kPi, 12);
}

std::string fmt_cone(const Cone2& k, bool radians) {
  switch (k.kind()) {
    case Cone2::Kind::Zero:
      return "zero";
    case Cone2::Kind::Plane:
      return "plane";
    case Cone2::Kind::Ray:
      return "ray " + fmt_angle(k.angle(), radians);
    case Cone2::Kind::Line:
      return "line " + fmt_angle(k.angle(), radians);
    case Cone2::Kind::Wedge: {
      double lo = k.lo();
      double hi = k.hi();
      if (hi > kTwoPi) {  // print the wrapped interval with a negative start
        lo -= kTwoPi;
        hi -= kTwoPi;
      }
      return "wedge[" + fmt_angle(lo, radians) + "," + fmt_angle(hi, radians) + "]";
    }
  }
  return "zero";
}

// Specs come either compact ("ray:30", "wedge[0,90]") or as a variant token
// followed by its angles ("ray 30", "wedge 0 90").
Cone2 parse_cone(const std::vector<std::string>& toks, std::size_t& pos, bool radians) {
  if (pos >= toks.size()) throw BadConeSpecError("missing cone spec");
  std::string t = toks[pos++];
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });

  std::string head = t;
  std::string payload;
  std::size_t sep = t.find_first_of(":[");
  if (sep != std::string::npos) {
    head = t.substr(0, sep);
    payload = t.substr(sep + 1);
    if (!payload.empty() && payload.back() == ']') payload.pop_back();
  }
  auto next_token = [&](const char* what) {
    if (!payload.empty()) {
      std::string v = payload;
      payload.clear();
      return v;
    }
    if (pos >= toks.size()) throw BadConeSpecError(std::string(what) + ": missing angle");
    return toks[pos++];
  };

  if (head == "zero") return Cone2::zero();
  if (head == "plane") return Cone2::plane();
  if (head == "ray") return Cone2::ray(to_radians(parse_number(next_token("ray"), "ray"), radians));
  if (head == "line") {
    return Cone2::line(to_radians(parse_number(next_token("line"), "line"), radians));
  }
  if (head == "wedge") {
    double lo;
    double hi;
    if (!payload.empty()) {
      std::size_t comma = payload.find(',');
      if (comma == std::string::npos) throw BadConeSpecError("wedge: expected wedge[lo,hi]");
      lo = parse_number(payload.substr(0, comma), "wedge lo");
      hi = parse_number(payload.substr(comma + 1), "wedge hi");
      payload.clear();
    } else {
      lo = parse_number(next_token("wedge"), "wedge lo");
      hi = parse_number(next_token("wedge"), "wedge hi");
    }
    double lo_r = to_radians(lo, radians);
    double width = to_radians(hi - lo, radians);
    if (!(width > 0.0) || width > kPi + 1e-9) {
      throw BadConeSpecError("wedge: need 0 < hi - lo <= " + std::string(radians ? "pi" : "180"));
    }
    return Cone2::wedge(lo_r, std::min(width, kPi));
  }
  throw BadConeSpecError("unknown cone variant: " + head);
}

int cmd_certify(const std::string& path, double tol, double band, int budget,
                std::uint64_t seed, bool force, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  Problem p = load_problem(path);
  CertifyOptions co;
  co.tol_cert = tol;
  co.indeterminate_band = band;
  co.oracle_budget = budget;
  co.seed = seed;
  co.force = force;
  CertifyResult res = certify(p.g, p.h, co);
  double wall = 0.0;
  if (timing) {
    wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  std::cout << report_to_json(make_report(res, wall)).dump(2) << "\n";
  switch (res.verdict) {
    case Verdict::Certified:
      return 0;
    case Verdict::Refuted:
      return 1;
    case Verdict::Indeterminate:
      return 2;
  }
  return 2;
}

int cmd_lift(const std::string& path) {
  Problem p = load_problem(path);
  LmiRecord rec = emit_lmi(std::optional<QuadraticFunction>(p.g), p.h);
  std::cout << lmi_to_json(rec).dump(2) << "\n";
  return 0;
}

int cmd_cone(const std::string& op, const std::vector<std::string>& specs, bool radians) {
  std::size_t pos = 0;
  if (op == "dual") {
    Cone2 k = parse_cone(specs, pos, radians);
    if (pos != specs.size()) throw BadConeSpecError("dual takes one cone");
    std::cout << fmt_cone(dual(k), radians) << "\n";
    return 0;
  }
  if (op == "intersect" || op == "sum" || op == "check") {
    Cone2 a = parse_cone(specs, pos, radians);
    Cone2 b = parse_cone(specs, pos, radians);
    if (pos != specs.size()) throw BadConeSpecError(op + " takes two cones");
    if (op == "intersect") {
      std::cout << fmt_cone(intersect(a, b), radians) << "\n";
      return 0;
    }
    if (op == "sum") {
      std::cout << fmt_cone(sum(a, b), radians) << "\n";
      return 0;
    }
    Cone2 lhs = dual(intersect(a, b));
    Cone2 rhs = sum(dual(a), dual(b));
    if (cone_eq(lhs, rhs, 1e-12)) {
      std::cout << "equal: " << fmt_cone(lhs, radians) << "\n";
      return 0;
    }
    std::cout << "differ: " << fmt_cone(lhs, radians) << " vs " << fmt_cone(rhs, radians)
              << "\n";
    return 1;
  }
  throw BadConeSpecError("unknown cone operation: " + op);
}

int cmd_curve(const std::string& path, const std::string& x1_str, const std::string& x2_str,
              int samples, const std::string& range, bool check) {
  Problem p = load_problem(path);
  VecN x1 = parse_vector(x1_str, "--x1");
  VecN x2 = parse_vector(x2_str, "--x2");
  if (static_cast<int>(x1.size()) != p.n || static_cast<int>(x2.size()) != p.n) {
    throw DimensionMismatchError("--x1 and --x2 must each have n entries");
  }
  double t_lo;
  double t_hi;
  std::size_t colon = range.find(':');
  if (colon == std::string::npos) {
    double r = parse_number(range, "--range");
    if (!(r > 0.0)) throw ParseError("--range: radius must be positive");
    t_lo = -r;
    t_hi = r;
  } else {
    t_lo = parse_number(range.substr(0, colon), "--range lo");
    t_hi = parse_number(range.substr(colon + 1), "--range hi");
    if (!(t_hi >= t_lo)) throw ParseError("--range: hi must be >= lo");
  }
  QuadCurve2 c = joint_range_curve(p.g, p.h, x1, x2);
  write_curve_csv(std::cout, c, t_lo, t_hi, samples);
  if (check) {
    CurveSamplingPlan plan;
    plan.t_max = std::max({10.0, std::fabs(t_lo), std::fabs(t_hi)});
    AngularSet ref = curve_angular_set(c, plan);
    std::vector<Vec2> pts = sample_curve(c, plan);
    HomConvexReport rep = hom_convex_check(pts, ref, 1e-3, 17);
    if (rep.homconvex) {
      std::cout << "homconvex=true\n";
    } else {
      std::cout << "homconvex=false";
      if (rep.violation) {
        std::cout << " i=" << rep.violation->i << " j=" << rep.violation->j
                  << " t=" << format_double(rep.violation->t)
                  << " angle=" << format_double(rep.violation->angle)
                  << " distance=" << format_double(rep.violation->distance);
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_oracle(const std::string& path, int budget, std::uint64_t seed) {
  Problem p = load_problem(path);
  std::optional<Counterexample> ce = oracle_search(p.g, p.h, budget, seed);
  if (!ce) {
    std::cout << "none\n";
    return 0;
  }
  Json j{{"x", ce->x}, {"g_val", ce->g_val}, {"h_val", ce->h_val}};
  std::cout << j.dump(2) << "\n";
  return 1;
}

int cmd_selftest(bool quick, bool full) {
  if (quick && full) throw std::invalid_argument("choose one of --quick, --full");
  SelftestScale sc = full ? full_scale() : quick_scale();
  std::vector<CheckResult> results = run_all(sc, &std::cout);
  int failed = 0;
  for (const CheckResult& r : results) {
    if (!r.pass) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
  return failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic copositivity certificates and exact 2d cone calculus"};
  app.require_subcommand(1);

  std::string path;
  double tol = 1e-9;
  double band = 1e-6;
  int budget = 2000;
  std::uint64_t seed = 1;
  bool force = false;
  bool timing = false;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "decide whether g >= 0 on {h >= 0} and emit a report");
  certify_cmd->add_option("path", path, "problem file (JSON)")->required();
  certify_cmd->add_option("--tol", tol, "certificate margin tolerance, relative");
  certify_cmd->add_option("--band", band, "indeterminate margin band, relative");
  certify_cmd->add_option("--budget", budget, "counterexample search budget");
  certify_cmd->add_option("--seed", seed, "search seed");
  certify_cmd->add_flag("--force", force, "proceed without a Slater point");
  certify_cmd->add_flag("--timing", timing, "record wall time in the report");

  std::string lift_path;
  CLI::App* lift_cmd = app.add_subcommand("lift", "emit the lifted matrix inequality as JSON");
  lift_cmd->add_option("path", lift_path, "problem file (JSON)")->required();

  std::string cone_op;
  std::vector<std::string> cone_specs;
  bool radians = false;
  bool degrees = false;
  CLI::App* cone_cmd = app.add_subcommand("cone", "dual / intersect / sum / check on 2d cones");
  cone_cmd->add_option("op", cone_op, "one of dual, intersect, sum, check")->required();
  cone_cmd->add_option("spec", cone_specs, "cone specs: zero, plane, ray A, line A, wedge[LO,HI]")
      ->expected(-1);
  cone_cmd->add_flag("--rad", radians, "angles in radians");
  cone_cmd->add_flag("--deg", degrees, "angles in degrees (default)");

  std::string curve_path;
  std::string x1_str;
  std::string x2_str;
  int samples = 101;
  std::string range = "10";
  bool check = false;
  CLI::App* curve_cmd =
      app.add_subcommand("curve", "sample the value curve t -> (g(x(t)), h(x(t))) as CSV");
  curve_cmd->add_option("path", curve_path, "problem file (JSON)")->required();
  curve_cmd->add_option("--x1", x1_str, "first point, comma-separated")->required();
  curve_cmd->add_option("--x2", x2_str, "second point, comma-separated")->required();
  curve_cmd->add_option("--samples", samples, "row count");
  curve_cmd->add_option("--range", range, "parameter range: R for [-R,R] or LO:HI");
  curve_cmd->add_flag("--check", check, "append a homogenization-convexity verdict");

  std::string oracle_path;
  int oracle_budget = 2000;
  std::uint64_t oracle_seed = 0;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "search for a point with h >= 0 and g < 0");
  oracle_cmd->add_option("path", oracle_path, "problem file (JSON)")->required();
  oracle_cmd->add_option("--budget", oracle_budget, "line search budget");
  oracle_cmd->add_option("--seed", oracle_seed, "search seed");

  bool quick = false;
  bool full = false;
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the built-in verification suite");
  selftest_cmd->add_flag("--quick", quick, "reduced scale (default)");
  selftest_cmd->add_flag("--full", full, "full scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (certify_cmd->parsed()) {
      return cmd_certify(path, tol, band, budget, seed, force, timing);
    }
    if (lift_cmd->parsed()) return cmd_lift(lift_path);
    if (cone_cmd->parsed()) {
      if (radians && degrees) throw BadConeSpecError("choose one of --rad, --deg");
      return cmd_cone(cone_op, cone_specs, radians);
    }
    if (curve_cmd->parsed()) {
      return cmd_curve(curve_path, x1_str, x2_str, samples, range, check);
    }
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_path, oracle_budget, oracle_seed);
    if (selftest_cmd->parsed()) return cmd_selftest(quick, full);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const BadConeSpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const SlaterViolatedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
