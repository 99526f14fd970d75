#pragma once

// Seeded acceptance battery. Each criterion is a self-contained check with
// its own tolerance and wall-clock budget; a criterion passes only if both
// hold.

#include <cstdint>
#include <string>
#include <vector>

namespace strategizer::battery {

struct Options {
  std::uint64_t seed = 20240601;
  // Random games for criteria 2-4 and sampled graphs for criterion 9.
  int count = 200;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_all(const Options& options);

// One "PASS"/"FAIL" line per criterion followed by a summary line.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace strategizer::battery
