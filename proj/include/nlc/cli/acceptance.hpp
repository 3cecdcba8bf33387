#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlc/core/report.hpp"

namespace nlc::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks_passed = false;
  double seconds = 0.0;
  double budget = 0.0;  // wall-clock limit in seconds, 0 for none
  std::vector<std::string> details;
  std::vector<CheckReport> reports;

  bool within_budget() const { return budget <= 0.0 || seconds <= budget; }
  bool passed() const { return checks_passed && within_budget(); }
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240917;
  std::vector<int> only;  // empty runs all eleven
  std::size_t mc_paths = 100000;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// "PASS 03 scaling identity (12.4 s / 30 s): detail; detail".
std::string summary_line(const CriterionResult& r);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace nlc::cli
