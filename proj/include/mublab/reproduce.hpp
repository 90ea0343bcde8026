#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mublab {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail; // numbers backing the verdict
};

struct ReproduceReport {
  std::vector<CriterionResult> results;
  double total_seconds = 0.0;
  bool all_passed = false;
  std::uint64_t seed = 0;
};

// Runs the full acceptance suite. Deterministic given the seed.
ReproduceReport run_acceptance(std::uint64_t seed);

} // namespace mublab
