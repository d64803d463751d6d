// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "sproc/quadcurve.hpp"
#include "sproc/quadform.hpp"
#include "sproc/slemma.hpp"
#include "sproc/symcore.hpp"

namespace sproc {

using Json = nlohmann::json;

// Problem file payload: {"n": int, "g": {"Q","l","c"}, "h": {...}, "x0"?}.
// Q is given as dense nested rows and symmetrized on load; relative asymmetry
// beyond 1e-8 is a ParseError, as is any other malformed content.
struct Problem {
  int n = 0;
  QuadraticFunction g;
  QuadraticFunction h;
  std::optional<VecN> x0;
};

Problem problem_from_json(const Json& j);
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);
Json problem_to_json(const Problem& p);

struct VerdictReport {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Certificate> certificate;
  std::optional<Counterexample> counterexample;
  CertifyDiagnostics diagnostics;
  double wall_time_s = 0.0;
};

VerdictReport make_report(const CertifyResult& result, double wall_time_s = 0.0);
Json report_to_json(const VerdictReport& r);
VerdictReport report_from_json(const Json& j);

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);  // ParseError on unknown tag

Json sym_to_json(const SymMatrix& m);  // dense nested rows
Json lmi_to_json(const LmiRecord& rec);

// Header "t,a,b,theta", one row per sample, uniform t in [t_lo, t_hi],
// theta = atan2(b, a). "\n" endings and C-locale number formatting.
void write_curve_csv(std::ostream& os, const QuadCurve2& c, double t_lo, double t_hi,
                     int samples);

// Locale-independent formatting: shortest round-trip form, and a fixed
// significant-digit form for angle output.
std::string format_double(double v);
std::string format_sig(double v, int digits);

}  // namespace sproc
