#include "nlc/core/report.hpp"

#include <cstdint>
#include <cstdio>

namespace nlc {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "SKIP";
}

// A report starts as Skip; the first requirement sets Pass and any failed one
// latches Fail.
void CheckReport::require(bool ok, const std::string& what) {
  if (!ok) {
    status = Status::Fail;
    diagnostics.push_back("failed: " + what);
  } else if (status == Status::Skip) {
    status = Status::Pass;
  }
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["name"] = r.lemma_id;
  j["status"] = to_string(r.status);
  j["pass"] = r.passed();
  j["value"] = r.value;
  j["bound"] = r.bound;
  j["worst_point"] = r.worst_point;
  j["metrics"] = r.metrics;
  j["fitted_constants"] = r.fitted_constants;
  j["diagnostics"] = r.diagnostics;
  return j;
}

nlohmann::json to_json(const NormReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["variant"] = r.variant;
  j["value"] = r.value;
  j["parameters"] = r.parameters;
  j["components"] = r.components;
  j["truncation_flags"] = r.truncation_flags;
  return j;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nlc
