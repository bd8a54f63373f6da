#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "igpm/oracles/oracles.hpp"

namespace igpm::harness {

struct CheckResult {
  std::string name;
  oracles::OracleReport report;
};

/// Runs the reference-oracle suite on seeded random problems: projection
/// equivalence, duality-gap certificates, gradients and λ_max.
std::vector<CheckResult> run_oracle_suite(std::uint64_t seed);

}  // namespace igpm::harness
