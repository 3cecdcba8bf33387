// Command-line front end: one subcommand per task, or `run` for the task
// list declared in the config.
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlc/cli/config.hpp"
#include "nlc/cli/runner.hpp"
#include "nlc/core/error.hpp"

int main(int argc, char** argv) {
  using namespace nlc::cli;
  CLI::App app{"Nonlocal parabolic Cauchy problems: symbols, densities, norms, solver and audits"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir;
  std::size_t paths = 0;
  double t = 0.0;
  std::vector<double> probes;

  std::map<std::string, CLI::App*> subs;
  for (const std::string name : {"symbol", "density", "norms", "solve", "mc", "audit", "verify-assumptions",
                                 "accept", "run"}) {
    auto* sc = app.add_subcommand(name, name == "run" ? "run the tasks listed in run.tasks" : "run the " + name + " task");
    sc->add_option("--config", config_path, "TOML or JSON experiment config");
    sc->add_option("--seed", seed, "override run.seed");
    sc->add_option("--threads", threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    sc->add_option("--out-dir", out_dir, "artifact directory");
    if (name == "mc" || name == "accept" || name == "run") sc->add_option("--paths", paths, "Monte Carlo paths");
    if (name == "mc" || name == "run") {
      sc->add_option("--t", t, "evaluation time");
      sc->add_option("--probes", probes, "probe coordinates, grid.d per probe")->delimiter(',');
    }
    subs[name] = sc;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  std::string task;
  for (const auto& [name, sc] : subs)
    if (sc->parsed()) task = name;
  auto* sc = subs[task];
  if (sc->count("--seed")) o.seed = seed;
  if (sc->count("--threads")) o.threads = threads;
  if (sc->count("--out-dir")) o.out_dir = out_dir;
  if (sc->get_option_no_throw("--paths") && sc->count("--paths")) o.paths = paths;
  if (sc->get_option_no_throw("--t") && sc->count("--t")) o.t = t;
  if (sc->get_option_no_throw("--probes") && sc->count("--probes")) o.probes = probes;

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else if (task == "accept") {
      cfg = parse_config(R"({"measures": {"pi": {"kind": "stable", "sigma": 1.0}}})", "<builtin>");
    } else {
      std::cerr << "config error: --config is required for " << task << std::endl;
      return kExitConfig;
    }
  } catch (const nlc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const nlc::DomainError& e) {
    std::cerr << "parameter error: " << e.what() << std::endl;
    return kExitConfig;
  }
  const std::vector<std::string> tasks = task == "run" ? cfg.run.tasks : std::vector<std::string>{task};
  return run_tasks(cfg, tasks, o, std::cout, std::cerr);
}
