// SPDX-License-Identifier: Apache-2.0
#include "sproc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sproc/errors.hpp"

namespace sproc {

namespace {

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

QuadraticFunction quadratic_from_json(const Json& j, int n, const char* name) {
  if (!j.is_object()) throw ParseError(std::string(name) + ": expected an object");
  if (!j.contains("Q") || !j.contains("l") || !j.contains("c")) {
    throw ParseError(std::string(name) + ": needs fields Q, l, c");
  }
  const Json& q = j["Q"];
  if (!q.is_array() || static_cast<int>(q.size()) != n) {
    throw ParseError(std::string(name) + ".Q: expected " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    const Json& row = q[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError(std::string(name) + ".Q: row " + std::to_string(i) + " has wrong length");
    }
    for (int k = 0; k < n; ++k) {
      rows[i][k] = number_at(row[k], "Q entry");
      if (!std::isfinite(rows[i][k])) throw ParseError(std::string(name) + ".Q: non-finite entry");
      max_abs = std::max(max_abs, std::fabs(rows[i][k]));
    }
  }
  double max_asym = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      max_asym = std::max(max_asym, std::fabs(rows[i][k] - rows[k][i]));
    }
  }
  if (max_asym > 1e-8 * std::max(1.0, max_abs)) {
    throw ParseError(std::string(name) + ".Q: asymmetric beyond tolerance");
  }
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int k = i; k < n; ++k) {
      m.set(i, k, 0.5 * (rows[i][k] + rows[k][i]));
    }
  }

  const Json& l = j["l"];
  if (!l.is_array() || static_cast<int>(l.size()) != n) {
    throw ParseError(std::string(name) + ".l: expected " + std::to_string(n) + " entries");
  }
  VecN lv(n);
  for (int i = 0; i < n; ++i) {
    lv[i] = number_at(l[i], "l entry");
    if (!std::isfinite(lv[i])) throw ParseError(std::string(name) + ".l: non-finite entry");
  }
  double c = number_at(j["c"], "c");
  if (!std::isfinite(c)) throw ParseError(std::string(name) + ".c: non-finite");
  return make_quadratic(std::move(m), std::move(lv), c);
}

Json quadratic_to_json(const QuadraticFunction& f) {
  int n = f.dim();
  Json q = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int k = 0; k < n; ++k) row.push_back(f.Q(i, k));
    q.push_back(std::move(row));
  }
  return Json{{"Q", std::move(q)}, {"l", f.l}, {"c", f.c}};
}

}  // namespace

Problem problem_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("problem: expected a JSON object");
    if (!j.contains("n")) throw ParseError("problem: missing field n");
    if (!j["n"].is_number_integer()) throw ParseError("problem.n: expected an integer");
    int n = j["n"].get<int>();
    if (n < 1) throw ParseError("problem.n: must be at least 1");
    if (!j.contains("g") || !j.contains("h")) throw ParseError("problem: needs fields g and h");
    Problem p;
    p.n = n;
    p.g = quadratic_from_json(j["g"], n, "g");
    p.h = quadratic_from_json(j["h"], n, "h");
    if (j.contains("x0") && !j["x0"].is_null()) {
      const Json& x0 = j["x0"];
      if (!x0.is_array() || static_cast<int>(x0.size()) != n) {
        throw ParseError("problem.x0: expected " + std::to_string(n) + " entries");
      }
      VecN v(n);
      for (int i = 0; i < n; ++i) {
        v[i] = number_at(x0[i], "x0 entry");
        if (!std::isfinite(v[i])) throw ParseError("problem.x0: non-finite entry");
      }
      p.x0 = std::move(v);
    }
    return p;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
}

Problem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

Json problem_to_json(const Problem& p) {
  Json j{{"n", p.n}, {"g", quadratic_to_json(p.g)}, {"h", quadratic_to_json(p.h)}};
  if (p.x0) j["x0"] = *p.x0;
  return j;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "certified";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "certified") return Verdict::Certified;
  if (name == "refuted") return Verdict::Refuted;
  if (name == "indeterminate") return Verdict::Indeterminate;
  throw ParseError("unknown verdict tag: " + name);
}

VerdictReport make_report(const CertifyResult& result, double wall_time_s) {
  VerdictReport r;
  r.verdict = result.verdict;
  r.certificate = result.certificate;
  r.counterexample = result.counterexample;
  r.diagnostics = result.diagnostics;
  r.wall_time_s = wall_time_s;
  return r;
}

Json report_to_json(const VerdictReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.certificate) {
    j["certificate"] = Json{{"xi", r.certificate->xi}, {"margin", r.certificate->margin_value}};
  }
  if (r.counterexample) {
    j["counterexample"] = Json{{"x", r.counterexample->x},
                               {"g_val", r.counterexample->g_val},
                               {"h_val", r.counterexample->h_val}};
  }
  const CertifyDiagnostics& d = r.diagnostics;
  j["diagnostics"] = Json{{"best_xi", d.best_xi},
                          {"best_margin", d.best_margin},
                          {"margin_evals", d.margin_evals},
                          {"bracket_hi", d.bracket_hi},
                          {"oracle_trials", d.oracle_trials},
                          {"seed", d.seed},
                          {"scale", d.scale},
                          {"tol_cert", d.tol_cert},
                          {"indeterminate_band", d.indeterminate_band},
                          {"slater_forced", d.slater_forced}};
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

VerdictReport report_from_json(const Json& j) {
  try {
    VerdictReport r;
    r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    if (j.contains("certificate")) {
      const Json& c = j["certificate"];
      r.certificate = Certificate{c.at("xi").get<double>(), c.at("margin").get<double>()};
    }
    if (j.contains("counterexample")) {
      const Json& c = j["counterexample"];
      Counterexample ce;
      ce.x = c.at("x").get<VecN>();
      ce.g_val = c.at("g_val").get<double>();
      ce.h_val = c.at("h_val").get<double>();
      r.counterexample = std::move(ce);
    }
    const Json& d = j.at("diagnostics");
    r.diagnostics.best_xi = d.at("best_xi").get<double>();
    r.diagnostics.best_margin = d.at("best_margin").get<double>();
    r.diagnostics.margin_evals = d.at("margin_evals").get<int>();
    r.diagnostics.bracket_hi = d.at("bracket_hi").get<double>();
    r.diagnostics.oracle_trials = d.at("oracle_trials").get<int>();
    r.diagnostics.seed = d.at("seed").get<std::uint64_t>();
    r.diagnostics.scale = d.at("scale").get<double>();
    r.diagnostics.tol_cert = d.at("tol_cert").get<double>();
    r.diagnostics.indeterminate_band = d.at("indeterminate_band").get<double>();
    r.diagnostics.slater_forced = d.at("slater_forced").get<bool>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

Json sym_to_json(const SymMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json lmi_to_json(const LmiRecord& rec) {
  Json j;
  j["statement"] = rec.statement;
  if (rec.lifted_objective) j["A"] = sym_to_json(*rec.lifted_objective);
  j["B"] = sym_to_json(rec.lifted_constraint);
  return j;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw NonFiniteError("format_double: conversion failed");
  return std::string(buf, p);
}

std::string format_sig(double v, int digits) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  if (ec != std::errc()) throw NonFiniteError("format_sig: conversion failed");
  return std::string(buf, p);
}

void write_curve_csv(std::ostream& os, const QuadCurve2& c, double t_lo, double t_hi,
                     int samples) {
  if (samples < 1) throw std::invalid_argument("write_curve_csv: need at least 1 sample");
  if (!(t_hi >= t_lo)) throw std::invalid_argument("write_curve_csv: empty range");
  os << "t,a,b,theta\n";
  for (int i = 0; i < samples; ++i) {
    double t = samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * i / (samples - 1);
    Vec2 p = c.eval(t);
    double theta = std::atan2(p.y, p.x);
    os << format_double(t) << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
       << format_double(theta) << '\n';
  }
}

}  // namespace sproc
