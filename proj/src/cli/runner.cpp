#include "nlc/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nlc/cli/acceptance.hpp"
#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/parallel.hpp"
#include "nlc/density/density.hpp"
#include "nlc/density/embedding.hpp"
#include "nlc/density/hormander.hpp"
#include "nlc/density/kernel_audits.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/mc/feynman_kac.hpp"
#include "nlc/mc/sampler.hpp"
#include "nlc/solver/apriori.hpp"
#include "nlc/solver/cauchy.hpp"
#include "nlc/spaces/corpus.hpp"
#include "nlc/spaces/norms.hpp"
#include "nlc/symbol/multiplier.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TaskOutcome {
  bool pass = true;
  json results = json::object();
};

struct Context {
  const ExperimentConfig& cfg;
  const Model& model;
  fs::path out;
  std::ostream& log;
};

GridSpec grid_of(const ExperimentConfig& c) { return GridSpec(c.grid.d, c.grid.n, c.grid.L); }

spaces::CorpusSpec corpus_spec(const ExperimentConfig& c) {
  spaces::CorpusSpec cs;
  cs.seed = c.run.seed;
  cs.max_band = std::min(cs.max_band, c.grid.n / 4);
  cs.min_band = std::min(cs.min_band, cs.max_band);
  return cs;
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json reports_json(const std::vector<CheckReport>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

bool all_pass(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs)
    if (!r.passed()) return false;
  return true;
}

json point_json(const std::array<double, 3>& p, int d) {
  json a = json::array();
  for (int i = 0; i < d; ++i) a.push_back(p[i]);
  return a;
}

Field read_field_csv(const std::string& path, const GridSpec& g) {
  std::ifstream in(path);
  if (!in) throw ConfigError("norms.field: cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<cplx> v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find_last_of(',');
    v.emplace_back(std::stod(comma == std::string::npos ? line : line.substr(comma + 1)), 0.0);
  }
  if (v.size() != g.size()) throw ConfigError("norms.field: expected " + std::to_string(g.size()) + " values");
  return Field(g, std::move(v));
}

solver::CauchyProblem make_problem(const Context& cx) {
  const auto& c = cx.cfg;
  const auto g = grid_of(c);
  solver::CauchyProblem pb(cx.model.pi.measure, cx.model.mu.measure, cx.model.kappa);
  pb.lambda = c.problem.lambda;
  pb.T = c.problem.T;
  pb.s = c.problem.s;
  pb.p = c.problem.p;
  const auto cs = corpus_spec(c);
  pb.g = spaces::band_limited_member(g, cs, c.problem.datum);
  if (c.problem.source == "corpus") {
    // f(t, x) = (1 + t) e(x), linear in time.
    const auto e = spaces::band_limited_member(g, cs, c.problem.source_index);
    pb.f.grid = g;
    pb.f.T = pb.T;
    for (int k = 0; k <= c.problem.n_steps; ++k) {
      const double t = pb.T * k / c.problem.n_steps;
      Field s(g);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (1.0 + t) * e[i];
      pb.f.slices.push_back(std::move(s));
    }
  }
  return pb;
}

spaces::NormContext norm_context(const Context& cx, int N) {
  const auto g = grid_of(cx.cfg);
  return spaces::make_context(N, g, cx.model.kappa, spectral::symbol_sym(cx.model.mu.measure, g),
                              cx.cfg.assumptions.alpha1);
}

// ---------------------------------------------------------------- tasks

TaskOutcome task_symbol(Context& cx) {
  TaskOutcome o;
  const auto g = grid_of(cx.cfg);
  const auto psi = spectral::symbol(cx.model.pi.measure, g);
  std::ostringstream csv;
  csv << "index";
  for (int a = 0; a < g.d; ++a) csv << ",xi" << a + 1;
  csv << ",re,im\n";
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const auto xi = g.frequency(k);
    csv << k;
    for (int a = 0; a < g.d; ++a) csv << "," << csv_number(xi[a]);
    csv << "," << csv_number(psi[k].real()) << "," << csv_number(psi[k].imag()) << "\n";
  }
  write_text(cx.out / "symbol.csv", csv.str());
  spectral::save_multiplier(psi, (cx.out / "symbol").string(), cx.model.pi.measure.fingerprint());
  const auto cmp = spectral::check_comparability(cx.model.pi.measure, cx.model.mu.measure, g);
  o.results["comparability"] = {{"c1", cmp.c1}, {"c2", cmp.c2}, {"argmin", point_json(cmp.argmin, g.d)},
                                {"argmax", point_json(cmp.argmax, g.d)}};
  if (cx.cfg.pi.kind == "stable") o.results["stable_constant"] = spectral::stable_constant(cx.model.pi.measure);
  o.results["files"] = {"symbol.csv", "symbol.bin", "symbol.json"};
  return o;
}

TaskOutcome task_density(Context& cx) {
  TaskOutcome o;
  const auto g = grid_of(cx.cfg);
  const auto psi = spectral::symbol(cx.model.pi.measure, g);
  std::vector<Field> ps;
  json diag = json::array();
  for (double t : cx.cfg.density_times) {
    ps.push_back(density::density_from_symbol(psi, t));
    const auto d = density::density_diagnostics(psi, t, t);
    diag.push_back({{"t", t}, {"mass", d.mass}, {"min_value", d.min_value},
                    {"semigroup_defect", d.semigroup_defect}, {"alias_level", density::alias_level(psi, t)}});
  }
  std::ostringstream csv;
  for (int a = 0; a < g.d; ++a) csv << (a ? ",x" : "x") << a + 1;
  for (double t : cx.cfg.density_times) csv << ",p_t" << csv_number(t);
  csv << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    for (int a = 0; a < g.d; ++a) csv << (a ? "," : "") << csv_number(x[a]);
    for (const auto& p : ps) csv << "," << csv_number(p[i].real());
    csv << "\n";
  }
  write_text(cx.out / "density.csv", csv.str());
  o.results["diagnostics"] = diag;
  o.results["alias_time"] = density::alias_time(psi);
  o.results["files"] = {"density.csv", "density.json"};
  return o;
}

TaskOutcome task_norms(Context& cx) {
  TaskOutcome o;
  const auto& ns = cx.cfg.norms;
  const auto g = grid_of(cx.cfg);
  const auto ctx = norm_context(cx, ns.N);
  const int m = ns.m > 0 ? ns.m : spaces::least_difference_order(ns.s, ctx.alpha1);
  std::vector<std::pair<std::string, Field>> fields;
  if (!ns.field.empty()) {
    fields.emplace_back(ns.field, read_field_csv(ns.field, g));
  } else {
    const auto cs = corpus_spec(cx.cfg);
    for (int i = 0; i < ns.count; ++i) fields.emplace_back("corpus_" + std::to_string(i), spaces::band_limited_member(g, cs, i));
  }
  json all = json::array();
  for (const auto& [name, f] : fields) {
    using spaces::Weighting;
    json entry;
    entry["field"] = name;
    entry["reports"] = {
        to_json(spaces::besov_norm(f, ns.s, ns.p, ns.q, Weighting::Kappa, ctx)),
        to_json(spaces::besov_norm(f, ns.s, ns.p, ns.q, Weighting::Bessel, ctx)),
        to_json(spaces::triebel_norm(f, ns.s, ns.p, Weighting::Kappa, ctx)),
        to_json(spaces::triebel_norm(f, ns.s, ns.p, Weighting::Bessel, ctx)),
    };
    if (ns.s > 0.0) {
      entry["reports"].push_back(to_json(spaces::difference_norm(f, ns.s, ns.p, ns.q, m, spaces::DifferenceVariant::Triebel, ctx)));
      entry["reports"].push_back(to_json(spaces::difference_norm(f, ns.s, ns.p, ns.q, m, spaces::DifferenceVariant::Besov, ctx)));
    }
    all.push_back(entry);
  }
  o.results["difference_order"] = m;
  o.results["beyond_coverage"] = ctx.partition.beyond_coverage;
  o.results["fields"] = all;
  return o;
}

void write_series(const FieldSeries& u, const fs::path& base, const std::string& hash) {
  std::ofstream bin(base.string() + ".bin", std::ios::binary);
  for (const auto& s : u.slices)
    for (const auto& v : s.values) {
      const double x = v.real();
      bin.write(reinterpret_cast<const char*>(&x), sizeof x);  // little-endian hosts only
    }
  json side = {{"grid", {{"d", u.grid.d}, {"n", u.grid.n}, {"L", u.grid.L}}},
               {"T", u.T},
               {"slices", u.slices.size()},
               {"dtype", "float64-le"},
               {"layout", "slice-major, points row-major with axis 0 slowest"},
               {"config_hash", hash}};
  write_text(base.string() + ".json", side.dump(2) + "\n");
}

TaskOutcome task_solve(Context& cx) {
  TaskOutcome o;
  const auto pb = make_problem(cx);
  const auto sol = solver::solve(pb, cx.cfg.problem.n_steps);
  write_series(sol.u, cx.out / "u", cx.cfg.hash);
  const auto ap = solver::apriori_report(pb, sol, norm_context(cx, cx.cfg.problem.N));
  std::vector<CheckReport> checks{ap};
  json res = json::object();
  if (sol.u.slices.size() >= 3) {
    const auto rc = solver::residual_check(pb, sol);
    res["max_residual"] = rc.value;
    checks.push_back(rc);
  }
  o.results["rho_lambda"] = sol.rho_lambda;
  o.results["time_step"] = sol.time_step;
  o.results["residuals"] = res;
  o.results["ratios"] = {{"r1", ap.metrics.at("r1")}, {"r2", ap.metrics.at("r2")}};
  o.results["diagnostics"] = sol.diagnostics;
  o.results["checks"] = reports_json(checks);
  o.results["files"] = {"u.bin", "u.json", "solve.json"};
  o.pass = ap.passed();
  return o;
}

mc::PathSampler make_sampler(const Context& cx) {
  const auto& m = cx.model.pi.measure;
  if (m.sigma() < 1.0) return mc::PathSampler::with_bias_target(m, 1e-3, cx.cfg.run.jump_cut, cx.cfg.run.seed);
  return mc::PathSampler(m, cx.cfg.run.jump_cut, cx.cfg.run.seed);
}

TaskOutcome task_mc(Context& cx) {
  TaskOutcome o;
  const auto& c = cx.cfg;
  const auto pb = make_problem(cx);
  if (c.run.t > pb.T) throw DomainError("run.t exceeds problem.T");
  const auto g = grid_of(c);
  std::vector<mc::Point> probes;
  if (c.run.probes.empty()) {
    for (int j = 0; j < 10; ++j) probes.push_back({-0.5 * g.L + (j + 0.5) * g.L / 10.0, 0.0, 0.0});
  } else {
    if (c.run.probes.size() % static_cast<std::size_t>(g.d) != 0)
      throw ConfigError("run.probes: length must be a multiple of grid.d");
    for (std::size_t j = 0; j < c.run.probes.size(); j += g.d) {
      mc::Point p{};
      for (int a = 0; a < g.d; ++a) p[a] = c.run.probes[j + a];
      probes.push_back(p);
    }
  }
  const auto sampler = make_sampler(cx);
  const auto fk = mc::feynman_kac(sampler, pb.lambda, pb.f.slices.empty() ? nullptr : &pb.f, pb.g, c.run.t,
                                  probes, c.run.paths);
  Field spec = solver::apply_I_lambda(pb, pb.g, c.run.t);
  if (!pb.f.slices.empty()) {
    const auto r = solver::apply_R_lambda(pb, pb.f, c.run.t);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] += r[i];
  }
  const mc::BandLimited u(spec);
  json list = json::array();
  for (const auto& e : fk.probes)
    list.push_back({{"probe", point_json(e.probe, g.d)},
                    {"estimate", e.estimate},
                    {"stderr", e.stderr_},
                    {"bias_bound", fk.bias_bound},
                    {"spectral", u(e.probe)}});
  o.results["t"] = c.run.t;
  o.results["n_paths"] = fk.n_paths;
  o.results["jump_cut"] = sampler.jump_cut();
  o.results["jump_rate"] = sampler.jump_rate();
  o.results["probes"] = list;
  return o;
}

TaskOutcome task_audit(Context& cx) {
  TaskOutcome o;
  const auto& c = cx.cfg;
  const auto& pi = cx.model.pi.measure;
  const auto& mu = cx.model.mu.measure;
  const auto& kappa = cx.model.kappa;
  const int d = c.grid.d;
  const auto ts = levy::log_grid(0.1, 10.0, 7);
  std::vector<CheckReport> out;
  const auto datum = spaces::band_limited_member(grid_of(c), corpus_spec(c), c.problem.datum);
  for (const auto& id : c.audits) {
    if (id == "al00") {
      mc::MomentAuditSpec spec;
      spec.alpha2 = c.assumptions.alpha2;
      spec.t_grid = levy::log_grid(0.1, 10.0, 5);
      spec.n_paths = c.run.paths;
      spec.eps = c.run.jump_cut;
      out.push_back(mc::moment_audit(pi, &kappa, spec, c.run.seed));
    } else if (id == "al1") {
      out.push_back(density::density_scaling_check(mu, kappa, ts, d, std::max(c.grid.n, 2048), c.tolerance("al1", 1e-4)));
    } else if (id == "al2") {
      density::KernelBoundSpec spec;
      spec.t_grid = ts;
      spec.c_grid = levy::log_grid(300.0, 3000.0, 5);
      spec.alpha2 = c.assumptions.alpha2;
      spec.d = d;
      out.push_back(density::kernel_bound_audit(pi, mu, kappa, spec));
    } else if (id == "mvt") {
      density::MvtSpec spec;
      spec.t_grid = ts;
      spec.shift_over_a = levy::log_grid(1e-3, 1e-1, 5);
      spec.d = d;
      out.push_back(density::mvt_audit(pi, mu, kappa, spec));
    } else if (id == "mainl") {
      density::HormanderSpec spec;
      spec.lambda = c.problem.lambda;
      spec.d = d;
      out.push_back(density::hormander_audit(pi, mu, kappa, density::extremal_samples(kappa, d, 1e-2, 1.0, 20), spec));
    } else if (id == "kl1") {
      for (double delta : {1.0, 0.5}) {
        // First kernel exponent q that passes the integrability precheck.
        double q = 1.0;
        for (double cand : {2.0, 1.5, 1.25})
          if (density::embedding_integrability(kappa, delta, cand, d).ok) {
            q = cand;
            break;
          }
        out.push_back(density::representation_check(pi, kappa, delta, {0.3, 0.0, 0.0}, datum, q));
      }
    } else if (id == "crl1") {
      out.push_back(density::kernel_lq_audit(pi, kappa, 0.5, 1.0, levy::log_grid(1e-2, 1.0, 5), d, c.grid.n, 64.0));
    } else if (id == "ccc1") {
      const auto h = density::holder_modulus_audit(pi, kappa, datum, levy::log_grid(1e-3, 1.0, 13), c.problem.p, 1.0);
      out.push_back(h.modulus);
      out.push_back(h.lp_bound);
    }
  }
  o.results["checks"] = reports_json(out);
  o.pass = all_pass(out);
  return o;
}

TaskOutcome task_verify(Context& cx) {
  TaskOutcome o;
  const auto& c = cx.cfg;
  const auto& pi = cx.model.pi.measure;
  const auto& kappa = cx.model.kappa;
  c.assumptions.validate(pi.sigma());
  const auto R_grid = levy::log_grid(1e-2, 1e2, 9);
  std::vector<CheckReport> out;
  out.push_back(levy::check_assumption_B(pi, kappa, c.assumptions, R_grid));
  out.push_back(levy::audit_scaling(kappa));
  std::optional<levy::LevyMeasure> mu0;
  if (cx.model.mu0) {
    mu0 = cx.model.mu0->measure;
  } else {
    const double e = cx.model.pi.bernstein ? 2.0 * cx.model.pi.bernstein->audit.delta1 : pi.sigma();
    const double c1 = levy::fit_lower_measure_constant(pi, kappa, e, R_grid);
    o.results["fitted_mu0"] = {{"exponent", e}, {"c1", c1}};
    if (c1 > 0.0) mu0 = levy::LevyMeasure::stable(pi.dim(), e, c1).truncated(1.0);
  }
  if (mu0) {
    out.push_back(levy::check_assumption_D(pi, *mu0, kappa, R_grid));
    out.push_back(levy::check_assumption_A0(*mu0, c.assumptions));
  }
  const auto ord = levy::estimate_order(pi);
  o.results["order_estimate"] = {{"sigma", ord.sigma}, {"spread", ord.spread}, {"power_like", ord.power_like}};
  if (cx.model.pi.bernstein) {
    const auto& a = cx.model.pi.bernstein->audit;
    out.push_back(a.kernel_report);
    out.push_back(a.ratio_report);
    out.push_back(levy::check_angular_nondegeneracy(pi, 1.0, 1.0));
    o.results["bernstein"] = {{"delta1", a.delta1}, {"delta2", a.delta2}, {"N_phi", a.N_phi},
                              {"N_kernel", a.N_kernel}, {"l_constant", a.l_constant}};
  }
  o.results["checks"] = reports_json(out);
  o.pass = all_pass(out);
  return o;
}

TaskOutcome task_accept(Context& cx) {
  TaskOutcome o;
  AcceptanceOptions opt;
  opt.seed = cx.cfg.run.seed;
  opt.only = cx.cfg.criteria;
  opt.mc_paths = cx.cfg.run.paths;
  json list = json::array();
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    const auto r = run_criterion(id, opt);
    cx.log << summary_line(r) << std::endl;
    list.push_back(to_json(r));
    o.pass = o.pass && r.checks_passed;
  }
  o.results["criteria"] = list;
  return o;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

json module_versions() {
  return {{"levy_core", "1.0"}, {"symbol_calculus", "1.0"}, {"gen_smoothness_spaces", "1.0"},
          {"density_kernels", "1.0"}, {"mc_oracle", "1.0"}, {"cauchy_solver", "1.0"}, {"cli_runner", "1.0"}};
}

int resolve_threads(const Overrides& o, const ExperimentConfig& cfg) {
  if (o.threads) return *o.threads;
  if (const char* env = std::getenv("NONLOCAL_CAUCHY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
    throw ConfigError("NONLOCAL_CAUCHY_THREADS: expected a nonnegative integer");
  }
  return cfg.run.threads;
}

int run_tasks(ExperimentConfig cfg, const std::vector<std::string>& tasks, const Overrides& o,
              std::ostream& log, std::ostream& err) {
  try {
    if (o.seed) cfg.run.seed = *o.seed;
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.paths) cfg.run.paths = *o.paths;
    if (o.t) cfg.run.t = *o.t;
    if (o.probes) cfg.run.probes = *o.probes;
    for (const auto& t : tasks)
      if (std::find(kTasks.begin(), kTasks.end(), t) == kTasks.end()) throw ConfigError("task '" + t + "' is unknown");
    if (tasks.empty()) return kExitOk;
    set_thread_count(resolve_threads(o, cfg));

    // Overrides change results, so they are part of the artifact hash.
    json effective = cfg.canonical;
    effective["__overrides"] = {{"seed", cfg.run.seed}, {"paths", cfg.run.paths}, {"t", cfg.run.t},
                                {"probes", cfg.run.probes}};
    const std::string hash = fnv1a_hex(effective.dump());
    cfg.hash = hash;

    const auto model = build_model(cfg);
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);
    Context cx{cfg, model, out, log};
    json meta = {{"config_hash", hash}, {"started_utc", utc_now()}, {"threads", thread_count()}, {"tasks", tasks}};
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    json task_seconds = json::object();
    for (const auto& name : tasks) {
      const auto ts = std::chrono::steady_clock::now();
      TaskOutcome r;
      if (name == "symbol") r = task_symbol(cx);
      else if (name == "density") r = task_density(cx);
      else if (name == "norms") r = task_norms(cx);
      else if (name == "solve") r = task_solve(cx);
      else if (name == "mc") r = task_mc(cx);
      else if (name == "audit") r = task_audit(cx);
      else if (name == "verify-assumptions") r = task_verify(cx);
      else r = task_accept(cx);
      task_seconds[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - ts).count();
      json art = {{"task", name}, {"config_hash", hash}, {"module_versions", module_versions()},
                  {"seed", cfg.run.seed}, {"status", r.pass ? "PASS" : "FAIL"}, {"results", r.results}};
      const std::string file = (name == "verify-assumptions" ? std::string("assumptions") : name) + ".json";
      write_text(out / file, art.dump(2) + "\n");
      log << name << ": " << (r.pass ? "PASS" : "FAIL") << " -> " << (out / file).string() << std::endl;
      ok = ok && r.pass;
    }
    meta["finished_utc"] = utc_now();
    meta["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    meta["task_seconds"] = task_seconds;
    meta["exit_code"] = ok ? kExitOk : kExitCheckFailed;
    write_text(out / "run_metadata.json", meta.dump(2) + "\n");
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "parameter error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const NumericalGuard& e) {
    err << "numerical guard: " << e.what() << std::endl;
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << std::endl;
    return kExitNumerical;
  }
}

}  // namespace nlc::cli
