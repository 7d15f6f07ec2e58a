// Numerical verification suite. Each check samples states or fiber points,
// evaluates one identity of the construction, and records the worst residual
// against a fixed tolerance. The suite is deterministic: every check derives
// its generator from (seed, check index), so reports are reproducible
// byte for byte regardless of check order or thread count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covhyp/catalog.hpp"

namespace covhyp {

struct CheckResult {
  std::string name;
  long samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string worst;  // where the largest residual occurred
};

struct VerifyReport {
  std::string system;
  SystemParams params;
  std::uint64_t seed = 0;
  long n_samples = 0;
  double flux_fault = 1.0;
  std::vector<CheckResult> checks;  // sorted by name
  std::vector<std::string> notes;
  bool all_pass = false;

  std::string text() const;
  std::string json() const;
};

/// Runs every check that applies to the system. n_samples >= 1.
VerifyReport run_suite(const SystemDescriptor& d, std::uint64_t seed, long n_samples);

}  // namespace covhyp
