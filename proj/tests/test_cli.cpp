#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "nlc/cli/config.hpp"
#include "nlc/cli/runner.hpp"
#include "nlc/core/error.hpp"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;
using namespace nlc;
using nlohmann::json;

namespace {

const std::string kBase = R"(
[measures.pi]
kind = "stable"
d = 1
sigma = 1.0

[grid]
d = 1
n = 64
L = 8.0

[problem]
lambda = 0.5
T = 1.0
n_steps = 16
)";

struct Sandbox {
  fs::path root;
  Sandbox() {
    root = fs::temp_directory_path() / ("nlc_test_cli_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Sandbox() { fs::remove_all(root); }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto p = root / name;
    std::ofstream(p) << text;
    return p;
  }
};

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string cli_path() {
  const char* p = std::getenv("NLC_CLI");
  return p ? p : "";
}

// Runs the CLI with stdout and stderr captured to files under the sandbox.
int run_cli(const Sandbox& box, const std::string& args, std::string* err_text = nullptr) {
  const auto out = box.root / "stdout.txt", err = box.root / "stderr.txt";
  const std::string cmd = "\"" + cli_path() + "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  if (err_text) *err_text = read(err);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string with_tasks(const std::string& extra, const std::string& tasks, const fs::path& out) {
  return kBase + extra + "\n[run]\nseed = 3\ntasks = [" + tasks + "]\n\n[output]\ndir = \"" + out.string() + "\"\n";
}

}  // namespace

TEST_CASE("config parsing reports dotted paths", "[config]") {
  const auto c = cli::parse_config(kBase);
  CHECK(c.grid.n == 64);
  CHECK(c.problem.lambda == 0.5);
  CHECK_FALSE(c.hash.empty());
  CHECK(cli::parse_config(kBase).hash == c.hash);

  auto fails_at = [](const std::string& text, const std::string& path) {
    try {
      cli::parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(path) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_at(kBase + "\n[solver]\nx = 1\n", "solver"));
  CHECK(fails_at(R"([measures.pi]
kind = "stable"
d = 1
sigma = 1.0
[grid]
d = 1
n = 64
L = 8.0
colour = "blue"
)",
                 "grid.colour"));
  CHECK(fails_at("[grid]\nn = 64\n", "measures.pi"));
  CHECK(fails_at(kBase + "\n[density]\ntimes = [1.0, -0.5]\n", "density.times[1]"));
  CHECK(fails_at(R"([measures.pi]
kind = "stable"
d = 1
sigma = 1.0
[grid]
n = 48
)",
                 "grid.n"));
  // JSON is accepted too.
  const auto j = cli::parse_config(R"({"measures": {"pi": {"kind": "stable", "d": 1, "sigma": 0.5}}})");
  CHECK(j.pi.sigma == 0.5);
}

TEST_CASE("empty task list succeeds and writes nothing", "[runner]") {
  Sandbox box;
  const auto out = box.root / "out";
  const auto cfg = cli::parse_config(with_tasks("", "", out));
  std::ostringstream log, err;
  CHECK(cli::run_tasks(cfg, {}, {}, log, err) == cli::kExitOk);
  CHECK_FALSE(fs::exists(out));
  CHECK(cli::run_tasks(cfg, {"bogus"}, {}, log, err) == cli::kExitConfig);
}

TEST_CASE("module versions cover every module", "[runner]") {
  const auto v = cli::module_versions();
  for (const char* m : {"levy_core", "symbol_calculus", "gen_smoothness_spaces", "density_kernels", "mc_oracle",
                        "cauchy_solver", "cli_runner"})
    CHECK(v.contains(m));
}

TEST_CASE("CLI exit codes", "[cli]") {
  REQUIRE_FALSE(cli_path().empty());
  Sandbox box;
  std::string err;

  const auto ok = box.write("ok.toml", with_tasks("", "\"symbol\", \"solve\"", box.root / "ok"));
  CHECK(run_cli(box, "run --config \"" + ok.string() + "\"") == 0);
  CHECK(fs::exists(box.root / "ok" / "symbol.json"));
  CHECK(fs::exists(box.root / "ok" / "solve.json"));

  const auto bad_T = box.write("bad_T.toml", with_tasks("", "\"solve\"", box.root / "bad"));
  std::string text = read(bad_T);
  text.replace(text.find("T = 1.0"), 7, "T = -1.0");
  box.write("bad_T.toml", text);
  CHECK(run_cli(box, "run --config \"" + bad_T.string() + "\"", &err) == 2);
  CHECK(err.find("problem.T") != std::string::npos);
  CHECK_FALSE(fs::exists(box.root / "bad"));

  const auto unknown = box.write("unknown.toml", kBase + "\n[problem.extra]\nfoo = 1\n");
  CHECK(run_cli(box, "run --config \"" + unknown.string() + "\"", &err) == 2);
  CHECK(run_cli(box, "run --config \"" + (box.root / "missing.toml").string() + "\"") == 2);

  // A coarse torus at small t trips the aliasing guard.
  const auto alias = box.write("alias.toml", kBase.substr(0, kBase.find("[grid]")) +
                                                 "[grid]\nd = 1\nn = 8\nL = 8.0\n[density]\ntimes = [0.01]\n"
                                                 "[run]\ntasks = [\"density\"]\n[output]\ndir = \"" +
                                                 (box.root / "alias").string() + "\"\n");
  CHECK(run_cli(box, "run --config \"" + alias.string() + "\"", &err) == 3);
  CHECK(err.find("numerical guard") != std::string::npos);

  // An unattainable tolerance turns a passing check into a failure.
  const auto strict = box.write("strict.toml", kBase + "\n[audit]\nlemmas = [\"al1\"]\n[run]\ntasks = [\"audit\"]\n"
                                                       "tolerances = {al1 = 1e-300}\n[output]\ndir = \"" +
                                                       (box.root / "strict").string() + "\"\n");
  CHECK(run_cli(box, "run --config \"" + strict.string() + "\"") == 1);
  const auto audit = json::parse(read(box.root / "strict" / "audit.json"));
  CHECK(audit["status"] == "FAIL");
}

TEST_CASE("artifacts are reproducible and tagged", "[cli]") {
  REQUIRE_FALSE(cli_path().empty());
  Sandbox box;
  const auto cfg = box.write("rep.toml", with_tasks("", "\"symbol\", \"density\", \"solve\"", box.root / "a"));
  REQUIRE(run_cli(box, "run --config \"" + cfg.string() + "\"") == 0);
  REQUIRE(run_cli(box, "run --config \"" + cfg.string() + "\" --out-dir \"" + (box.root / "b").string() + "\"") == 0);
  for (const char* f : {"symbol.json", "symbol.csv", "density.json", "density.csv", "solve.json"}) {
    INFO(f);
    REQUIRE(fs::exists(box.root / "a" / f));
    CHECK(read(box.root / "a" / f) == read(box.root / "b" / f));
  }
  const auto art = json::parse(read(box.root / "a" / "solve.json"));
  const auto meta = json::parse(read(box.root / "a" / "run_metadata.json"));
  CHECK(art["config_hash"] == meta["config_hash"]);
  CHECK(art["module_versions"] == cli::module_versions());
  CHECK(meta["exit_code"] == 0);

  // A seed override changes the hash.
  REQUIRE(run_cli(box, "run --config \"" + cfg.string() + "\" --seed 4 --out-dir \"" + (box.root / "c").string() + "\"") == 0);
  CHECK(json::parse(read(box.root / "c" / "solve.json"))["config_hash"] != art["config_hash"]);
}
