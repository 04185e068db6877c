/** @file verify.hpp
 *  @brief Invariant suites over the core modules with machine-readable summaries. */
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace opeforge {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  nlohmann::json data;  // check-specific numbers
  nlohmann::json to_json() const;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  unsigned long seed = 20240611;
  int phi2_L = 2000;
  int phi3_L = 1500;
  int crosscheck_N = 500;
};

// Individual checks (also used by the acceptance binary).
CheckResult check_cg_orthogonality(int lmax = 4);
CheckResult check_parity_cg_triple_integral(int lmax = 6);
CheckResult check_addition_theorem(int lmax, int pairs, unsigned long seed);
CheckResult check_ring_round_trip(int terms, unsigned long seed);
CheckResult check_char_sum(int lmax = 4, int amax = 10);
CheckResult check_dougall(int N = 10000);
CheckResult check_r1_phi2(int L);
CheckResult check_r1_phi3(int L);
CheckResult check_crosscheck(int N);
CheckResult check_crosscheck_quadrature(int N);

const std::vector<std::string>& suite_names();  // angular, ring, sums, remainders, crosscheck, all
/// Runs one suite; "all" runs every suite in order. Unknown names raise InputError.
std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& opts = {});

}  // namespace opeforge
