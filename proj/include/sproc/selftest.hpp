// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sproc {

// Instance counts and budgets for the built-in verification suite.
// full_scale() matches the documented guarantees; quick_scale() is a smoke
// pass over the same checks.
struct SelftestScale {
  int slemma_instances = 500;
  int oracle_budget = 5000;
  int cone_pairs = 10000;
  int curve_instances = 200;
  int curve_samples = 10000;
  int concavity_instances = 100;
  int concavity_triples = 100;
  int psd_instances = 500;
  int regularity_instances = 1000;
  int chain_instances = 1000;
  int polygon_instances = 100;
  int jacobi_instances = 25;
  int jacobi_max_dim = 50;
  std::uint64_t seed = 20260819;
};

SelftestScale full_scale();
SelftestScale quick_scale();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counts plus the first failure, when any
  double seconds = 0.0;
};

// Runs every check at the given scale, in a fixed order, logging one line
// per check when log is given. Deterministic for a fixed scale.
std::vector<CheckResult> run_all(const SelftestScale& scale, std::ostream* log = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sproc
