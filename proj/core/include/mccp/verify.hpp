#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mccp/model.hpp"

namespace mccp {

// One named cross-check with its worst observed residual and the pinned
// threshold it is held against.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
  int instances = 0;  // how many inputs contributed to the residual
};

struct VerifyOptions {
  bool full = false;          // larger instance counts, wider matrix checks
  bool inject_fault = false;  // corrupt the generator parameters (self-test)
};

// Cross-checks for one distribution: the combinatorial logarithm against
// the series logarithm, the partition-form parameters against the Moebius
// form, exponential round trips at vector and matrix level, spectral
// structure and the semigroup law. Fault injection perturbs the log
// parameters so that a healthy harness must report failures.
std::vector<CheckResult> verify_distribution(const CouponDistribution& p,
                                             const VerifyOptions& opts);

// Runs verify_distribution over `count` seeded random distributions on
// {1..n} plus the star/Exp/Log algebra laws on random vectors, and merges
// results per check name (worst residual wins).
std::vector<CheckResult> verify_random(int n, int count, std::uint64_t seed,
                                       const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

std::string format_check_line(const CheckResult& result);

}  // namespace mccp
