#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlc {

enum class Status { Pass, Fail, Skip };

std::string to_string(Status s);

struct CheckReport {
  std::string lemma_id;
  Status status = Status::Skip;
  double value = 0.0;
  double bound = 0.0;
  std::vector<double> worst_point;
  std::map<std::string, double> metrics;
  std::map<std::string, double> fitted_constants;
  std::vector<std::string> diagnostics;

  bool passed() const { return status == Status::Pass; }
  void require(bool ok, const std::string& what);
};

struct NormReport {
  std::string name;
  std::string variant;
  double value = 0.0;
  std::map<std::string, double> parameters;
  std::vector<double> components;  // per-block or per-node contributions
  std::vector<std::string> truncation_flags;
};

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const NormReport& r);

// Stable 64-bit digest used to tag artifacts with the config they came from.
std::string fnv1a_hex(const std::string& text);

}  // namespace nlc
