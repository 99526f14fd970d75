// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [--seed S] [--count N] [criterion ids...]

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "strategizer/battery.hpp"

int main(int argc, char** argv) {
  namespace bt = strategizer::battery;
  bt::Options options;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      options.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--count" && i + 1 < argc) {
      options.count = std::atoi(argv[++i]);
    } else {
      ids.push_back(std::atoi(arg.c_str()));
    }
  }
  if (ids.empty()) {
    for (int id = 1; id <= bt::kCriterionCount; ++id) ids.push_back(id);
  }

  std::vector<bt::CriterionResult> results;
  bool all_passed = true;
  for (int id : ids) {
    results.push_back(bt::run_criterion(id, options));
    const auto& r = results.back();
    std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name
              << "  (" << r.seconds << " s)  " << r.detail << std::endl;
    all_passed = all_passed && r.passed;
  }
  return all_passed ? EXIT_SUCCESS : EXIT_FAILURE;
}
