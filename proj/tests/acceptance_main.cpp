#include <cstdio>
#include <cstdlib>

#include "mublab/reproduce.hpp"

int main() {
  std::uint64_t seed = 20250301;
  if (const char* env = std::getenv("MUBLAB_SEED")) seed = std::strtoull(env, nullptr, 10);

  const mublab::ReproduceReport report = mublab::run_acceptance(seed);
  for (const auto& r : report.results)
    std::printf("[%s] %2d %-55s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.index,
                r.name.c_str(), r.seconds, r.detail.c_str());
  std::printf("%s: %zu criteria, %.2fs total, seed=%llu\n",
              report.all_passed ? "ALL PASS" : "FAILURES PRESENT", report.results.size(),
              report.total_seconds, static_cast<unsigned long long>(report.seed));
  return report.all_passed ? 0 : 1;
}
