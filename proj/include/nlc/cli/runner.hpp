#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlc/cli/config.hpp"

namespace nlc::cli {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> paths;
  std::optional<double> t;
  std::optional<std::vector<double>> probes;
};

// --threads, then NONLOCAL_CAUCHY_THREADS, then run.threads.
int resolve_threads(const Overrides& o, const ExperimentConfig& cfg);

// Runs the tasks in order and writes one JSON artifact per task (plus CSV or
// binary data) into the output directory, and run_metadata.json with the
// timestamps. An empty task list writes nothing. Returns an ExitCode.
int run_tasks(ExperimentConfig cfg, const std::vector<std::string>& tasks, const Overrides& o,
              std::ostream& log, std::ostream& err);

// Version tags embedded in every artifact.
nlohmann::json module_versions();

}  // namespace nlc::cli
