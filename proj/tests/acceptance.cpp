// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Optional arguments select criteria by number, e.g. `acceptance 1 4 7`.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "nlc/cli/acceptance.hpp"
#include "nlc/core/parallel.hpp"

int main(int argc, char** argv) {
  nlc::cli::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || id < 1 || id > nlc::cli::kCriterionCount) {
      std::cerr << "usage: acceptance [criterion 1.." << nlc::cli::kCriterionCount << "]...\n";
      return 2;
    }
    opt.only.push_back(static_cast<int>(id));
  }
  if (const char* env = std::getenv("NONLOCAL_CAUCHY_THREADS")) nlc::set_thread_count(std::atoi(env));
  int failed = 0;
  for (int id = 1; id <= nlc::cli::kCriterionCount; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    const auto r = nlc::cli::run_criterion(id, opt);
    std::cout << nlc::cli::summary_line(r) << std::endl;
    if (!r.passed()) ++failed;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criteria FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
