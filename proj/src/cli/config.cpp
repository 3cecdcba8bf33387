#include "nlc/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "nlc/core/error.hpp"
#include "toml.hpp"

namespace nlc::cli {

using nlohmann::json;

const std::vector<std::string> kTasks = {"symbol", "density", "norms", "solve", "mc",
                                         "audit", "verify-assumptions", "accept"};
const std::vector<std::string> kAudits = {"al00", "al1", "al2", "mvt", "mainl", "kl1", "crl1", "ccc1"};

namespace {

json from_toml(const toml::node& n) {
  if (auto t = n.as_table()) {
    json o = json::object();
    for (const auto& [k, v] : *t) o[std::string(k.str())] = from_toml(v);
    return o;
  }
  if (auto a = n.as_array()) {
    json o = json::array();
    for (const auto& v : *a) o.push_back(from_toml(v));
    return o;
  }
  if (auto v = n.as_integer()) return v->get();
  if (auto v = n.as_floating_point()) return v->get();
  if (auto v = n.as_boolean()) return v->get();
  if (auto v = n.as_string()) return v->get();
  throw ConfigError("unsupported TOML value (dates and times are not accepted)");
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

using Check = std::function<const char*(double)>;

const char* positive(double v) { return v > 0.0 ? nullptr : "must be > 0"; }
const char* nonnegative(double v) { return v >= 0.0 ? nullptr : "must be >= 0"; }

// Object reader that remembers which keys were consumed.
class Section {
 public:
  Section(const json* obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (obj_ && !obj_->is_object()) fail(path_, "expected a table");
  }
  bool has(const char* key) const { return obj_ && obj_->contains(key); }
  std::string at(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* raw(const char* key) {
    if (!has(key)) return nullptr;
    seen_.insert(key);
    return &(*obj_)[key];
  }

  void number(const char* key, double& out, const Check& check = {}) {
    if (const json* v = raw(key)) {
      if (!v->is_number()) fail(at(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(at(key), "must be finite");
    }
    if (check)
      if (const char* msg = check(out)) fail(at(key), msg);
  }
  void integer(const char* key, int& out, const Check& check = {}) {
    if (const json* v = raw(key)) {
      if (!v->is_number_integer()) fail(at(key), "expected an integer");
      out = v->get<int>();
    }
    if (check)
      if (const char* msg = check(out)) fail(at(key), msg);
  }
  void unsigned_integer(const char* key, std::uint64_t& out) {
    if (const json* v = raw(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) fail(at(key), "expected a nonnegative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void string(const char* key, std::string& out, const std::vector<std::string>& allowed = {}) {
    if (const json* v = raw(key)) {
      if (!v->is_string()) fail(at(key), "expected a string");
      out = v->get<std::string>();
    }
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), out) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(at(key), "must be one of " + list);
    }
  }
  void numbers(const char* key, std::vector<double>& out) {
    if (const json* v = raw(key)) {
      if (!v->is_array()) fail(at(key), "expected an array of numbers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number()) fail(at(key) + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back((*v)[i].get<double>());
      }
    }
  }
  void integers(const char* key, std::vector<int>& out) {
    if (const json* v = raw(key)) {
      if (!v->is_array()) fail(at(key), "expected an array of integers");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number_integer()) fail(at(key) + "[" + std::to_string(i) + "]", "expected an integer");
        out.push_back((*v)[i].get<int>());
      }
    }
  }
  void strings(const char* key, std::vector<std::string>& out, const std::vector<std::string>& allowed) {
    if (const json* v = raw(key)) {
      if (!v->is_array()) fail(at(key), "expected an array of strings");
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string p = at(key) + "[" + std::to_string(i) + "]";
        if (!(*v)[i].is_string()) fail(p, "expected a string");
        out.push_back((*v)[i].get<std::string>());
        if (std::find(allowed.begin(), allowed.end(), out.back()) == allowed.end())
          fail(p, "unknown entry '" + out.back() + "'");
      }
    }
  }
  Section sub(const char* key) {
    const json* v = raw(key);
    return Section(v, at(key));
  }
  void finish() const {
    if (!obj_) return;
    for (const auto& [k, v] : obj_->items())
      if (!seen_.count(k)) fail(at(k.c_str()), "unknown key");
  }

 private:
  const json* obj_;
  std::string path_;
  std::set<std::string> seen_;
};

MeasureSpec read_measure(Section s) {
  MeasureSpec m;
  s.string("kind", m.kind, {"stable", "bernstein"});
  s.integer("d", m.d, [](double v) { return v >= 1 && v <= 3 ? nullptr : "must be 1, 2 or 3"; });
  s.number("sigma", m.sigma, [](double v) { return v > 0.0 && v < 2.0 ? nullptr : "must lie in (0, 2)"; });
  s.number("coefficient", m.coefficient, positive);
  s.string("phi", m.phi);
  s.numbers("params", m.params);
  s.numbers("exponents", m.exponents);
  s.numbers("weights", m.weights);
  s.number("cutoff", m.cutoff, nonnegative);
  if (m.kind == "bernstein") {
    static const std::vector<std::string> catalog = {"shifted_power", "power_log", "log_cosh", "power_sum"};
    if (std::find(catalog.begin(), catalog.end(), m.phi) == catalog.end())
      fail(s.at("phi"), "must be one of shifted_power, power_log, log_cosh, power_sum");
    const std::size_t want = m.phi == "log_cosh" ? 1 : m.phi == "power_sum" ? 0 : 2;
    if (m.params.size() != want) fail(s.at("params"), "expected " + std::to_string(want) + " values");
    if (m.phi == "power_sum" && (m.exponents.empty() || m.exponents.size() != m.weights.size()))
      fail(s.at("exponents"), "needs matching non-empty exponents and weights");
  }
  s.finish();
  return m;
}

}  // namespace

double ExperimentConfig::tolerance(const std::string& key, double fallback) const {
  const auto it = run.tolerances.find(key);
  return it == run.tolerances.end() ? fallback : it->second;
}

ExperimentConfig validate_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>: expected a table");
  ExperimentConfig c;
  c.canonical = doc;
  Section root(&doc, "");

  {
    auto ms = root.sub("measures");
    if (!ms.has("pi")) fail("measures.pi", "required");
    c.pi = read_measure(ms.sub("pi"));
    if (ms.has("mu")) c.mu = read_measure(ms.sub("mu"));
    if (ms.has("mu0")) c.mu0 = read_measure(ms.sub("mu0"));
    ms.finish();
  }
  {
    auto s = root.sub("scaling");
    s.string("kind", c.scaling.kind, {"auto", "power", "bernstein"});
    s.number("sigma", c.scaling.sigma, [](double v) { return v > 0.0 && v < 2.0 ? nullptr : "must lie in (0, 2)"; });
    s.number("coefficient", c.scaling.coefficient, positive);
    s.finish();
  }
  {
    auto s = root.sub("assumptions");
    s.number("alpha1", c.assumptions.alpha1, positive);
    s.number("alpha2", c.assumptions.alpha2, nonnegative);
    s.number("n0", c.assumptions.n0, positive);
    s.number("N0", c.assumptions.N0, positive);
    s.number("c1", c.assumptions.c1, nonnegative);
    s.finish();
  }
  {
    auto s = root.sub("grid");
    s.integer("d", c.grid.d, [](double v) { return v >= 1 && v <= 3 ? nullptr : "must be 1, 2 or 3"; });
    s.integer("n", c.grid.n, [](double v) {
      const auto n = static_cast<long>(v);
      return n >= 8 && (n & (n - 1)) == 0 ? nullptr : "must be a power of two >= 8";
    });
    s.number("L", c.grid.L, positive);
    s.finish();
  }
  {
    auto s = root.sub("problem");
    s.number("lambda", c.problem.lambda, nonnegative);
    s.number("T", c.problem.T, positive);
    s.number("s", c.problem.s);
    s.number("p", c.problem.p, [](double v) { return v > 1.0 ? nullptr : "must be > 1"; });
    s.integer("N", c.problem.N, [](double v) { return v >= 2 ? nullptr : "must be >= 2"; });
    s.integer("n_steps", c.problem.n_steps, [](double v) { return v >= 1 ? nullptr : "must be >= 1"; });
    s.integer("datum", c.problem.datum, nonnegative);
    s.string("source", c.problem.source, {"zero", "corpus"});
    s.integer("source_index", c.problem.source_index, nonnegative);
    s.finish();
  }
  {
    auto s = root.sub("norms");
    s.number("s", c.norms.s);
    s.number("p", c.norms.p, [](double v) { return v > 1.0 ? nullptr : "must be > 1"; });
    s.number("q", c.norms.q, [](double v) { return v > 1.0 ? nullptr : "must be > 1"; });
    s.integer("N", c.norms.N, [](double v) { return v >= 2 ? nullptr : "must be >= 2"; });
    s.integer("count", c.norms.count, [](double v) { return v >= 1 ? nullptr : "must be >= 1"; });
    s.integer("m", c.norms.m, nonnegative);
    s.string("field", c.norms.field);
    s.finish();
  }
  {
    auto s = root.sub("density");
    s.numbers("times", c.density_times);
    for (std::size_t i = 0; i < c.density_times.size(); ++i)
      if (!(c.density_times[i] > 0.0)) fail("density.times[" + std::to_string(i) + "]", "must be > 0");
    s.finish();
  }
  {
    auto s = root.sub("audit");
    c.audits = kAudits;
    s.strings("lemmas", c.audits, kAudits);
    s.finish();
  }
  {
    auto s = root.sub("accept");
    s.integers("criteria", c.criteria);
    for (std::size_t i = 0; i < c.criteria.size(); ++i)
      if (c.criteria[i] < 1 || c.criteria[i] > 11) fail("accept.criteria[" + std::to_string(i) + "]", "must be in 1..11");
    s.finish();
  }
  {
    auto s = root.sub("run");
    s.unsigned_integer("seed", c.run.seed);
    s.integer("threads", c.run.threads, nonnegative);
    std::uint64_t paths = c.run.paths;
    s.unsigned_integer("paths", paths);
    c.run.paths = paths;
    if (c.run.paths < 1) fail("run.paths", "must be >= 1");
    s.number("t", c.run.t, nonnegative);
    s.number("jump_cut", c.run.jump_cut, positive);
    s.numbers("probes", c.run.probes);
    s.strings("tasks", c.run.tasks, kTasks);
    if (const json* tol = s.raw("tolerances")) {
      if (!tol->is_object()) fail("run.tolerances", "expected a table");
      for (const auto& [k, v] : tol->items()) {
        if (!v.is_number() || !(v.get<double>() > 0.0)) fail("run.tolerances." + k, "must be a positive number");
        c.run.tolerances[k] = v.get<double>();
      }
    }
    s.finish();
  }
  {
    auto s = root.sub("output");
    s.string("dir", c.out_dir);
    s.finish();
  }
  root.finish();

  if (c.pi.d != c.grid.d) fail("measures.pi.d", "differs from grid.d");
  if (c.mu && c.mu->d != c.grid.d) fail("measures.mu.d", "differs from grid.d");
  if (c.problem.source == "corpus" && c.problem.source_index == c.problem.datum)
    fail("problem.source_index", "must differ from problem.datum");
  c.hash = fnv1a_hex(doc.dump());
  return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(origin + ": invalid JSON: " + e.what());
    }
  } else {
    try {
      doc = from_toml(toml::parse(text, origin));
    } catch (const toml::parse_error& e) {
      std::ostringstream os;
      os << origin << ": invalid TOML at line " << e.source().begin.line << ": " << e.description();
      throw ConfigError(os.str());
    }
  }
  return validate_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

BuiltMeasure build_measure(const MeasureSpec& s) {
  if (s.kind == "stable") {
    auto m = levy::LevyMeasure::stable(s.d, s.sigma, s.coefficient);
    if (s.cutoff > 0.0) m = m.truncated(s.cutoff);
    return {m, std::nullopt};
  }
  std::shared_ptr<const levy::BernsteinFunction> phi;
  if (s.phi == "shifted_power") phi = levy::shifted_power(s.params[0], s.params[1]);
  else if (s.phi == "power_log") phi = levy::power_log(s.params[0], s.params[1]);
  else if (s.phi == "log_cosh") phi = levy::log_cosh(s.params[0]);
  else phi = levy::power_sum(s.exponents, s.weights);
  auto model = levy::bernstein_measure(phi, s.d);
  auto m = model.measure;
  if (s.cutoff > 0.0) m = m.truncated(s.cutoff);
  return {m, model};
}

Model build_model(const ExperimentConfig& c) {
  auto pi = build_measure(c.pi);
  auto mu = c.mu ? build_measure(*c.mu) : pi;
  std::optional<BuiltMeasure> mu0;
  if (c.mu0) mu0 = build_measure(*c.mu0);
  levy::ScalingTriple kappa;
  std::string kind = c.scaling.kind;
  if (kind == "auto") kind = mu.bernstein ? "bernstein" : "power";
  if (kind == "bernstein") {
    if (!mu.bernstein) throw ConfigError("scaling.kind: bernstein scaling needs a bernstein comparator measure");
    kappa = mu.bernstein->scaling;
  } else {
    const bool explicit_power = c.scaling.kind == "power";
    kappa = levy::ScalingTriple::power(explicit_power ? c.scaling.sigma : mu.measure.sigma(),
                                      explicit_power ? c.scaling.coefficient : 1.0);
  }
  return {std::move(pi), std::move(mu), std::move(mu0), std::move(kappa)};
}

}  // namespace nlc::cli
