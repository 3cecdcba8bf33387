#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/levy/bernstein.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"

namespace nlc::cli {

struct MeasureSpec {
  std::string kind = "stable";    // stable | bernstein
  int d = 1;
  double sigma = 1.0;             // stable only
  double coefficient = 1.0;       // stable only
  std::string phi;                // bernstein catalog id
  std::vector<double> params;     // catalog parameters
  std::vector<double> exponents;  // power_sum
  std::vector<double> weights;    // power_sum coefficients
  double cutoff = 0.0;            // 0 keeps the full measure
};

struct ScalingSpec {
  std::string kind = "auto";  // auto | power | bernstein
  double sigma = 1.0;
  double coefficient = 1.0;
};

struct GridConfig {
  int d = 1;
  int n = 256;
  double L = 16.0;
};

struct ProblemSpec {
  double lambda = 0.0;
  double T = 1.0;
  double s = 0.0;
  double p = 2.0;
  int N = 2;
  int n_steps = 64;
  int datum = 0;               // corpus index of g
  std::string source = "zero"; // zero | corpus
  int source_index = 1;
};

struct NormsSpec {
  double s = 0.5;
  double p = 2.0;
  double q = 2.0;
  int N = 2;
  int count = 10;
  int m = 0;          // 0 selects the least admissible order
  std::string field;  // optional CSV input instead of the corpus
};

struct RunSpec {
  std::uint64_t seed = 1;
  int threads = 1;
  std::size_t paths = 100000;
  double t = 1.0;
  double jump_cut = 1e-3;
  std::vector<double> probes;
  std::vector<std::string> tasks;
  std::map<std::string, double> tolerances;
};

struct ExperimentConfig {
  MeasureSpec pi;
  std::optional<MeasureSpec> mu;
  std::optional<MeasureSpec> mu0;
  ScalingSpec scaling;
  levy::AssumptionParams assumptions;
  GridConfig grid;
  ProblemSpec problem;
  NormsSpec norms;
  RunSpec run;
  std::vector<double> density_times{0.5, 1.0, 2.0};
  std::vector<std::string> audits;
  std::vector<int> criteria;
  std::string out_dir = "out";
  nlohmann::json canonical;  // validated document, used for the hash
  std::string hash;

  double tolerance(const std::string& key, double fallback) const;
};

extern const std::vector<std::string> kTasks;
extern const std::vector<std::string> kAudits;

// TOML, or JSON when the text starts with '{'. Throws ConfigError with the
// dotted field path of the first offending entry.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::string& path);
ExperimentConfig validate_config(const nlohmann::json& doc);

struct BuiltMeasure {
  levy::LevyMeasure measure;
  std::optional<levy::BernsteinModel> bernstein;
};
BuiltMeasure build_measure(const MeasureSpec& spec);

struct Model {
  BuiltMeasure pi;
  BuiltMeasure mu;
  std::optional<BuiltMeasure> mu0;
  levy::ScalingTriple kappa;
};
Model build_model(const ExperimentConfig& cfg);

}  // namespace nlc::cli
