#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace hypmoments {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  nlohmann::json detail = nlohmann::json::object();  // first counterexample on failure
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Gauss-sum values of the length-2, length-4 and Clausen data against their
/// trace expressions, for every admissible λ. Data whose modulus does not
/// divide p - 1 are skipped.
SuiteReport identity_suite(const std::vector<std::uint32_t>& primes, unsigned threads = 1);

/// Exact Catalan, multiplicity and Γ identities up to max_order.
SuiteReport combinatorics_suite(unsigned max_order = 30);

/// Normalization, moment and transform checks for the limiting densities.
SuiteReport density_suite();

}  // namespace hypmoments
