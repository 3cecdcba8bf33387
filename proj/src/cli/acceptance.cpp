#include "nlc/cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/density/density.hpp"
#include "nlc/density/embedding.hpp"
#include "nlc/density/hormander.hpp"
#include "nlc/density/kernel_audits.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/levy/bernstein.hpp"
#include "nlc/mc/feynman_kac.hpp"
#include "nlc/mc/sampler.hpp"
#include "nlc/solver/apriori.hpp"
#include "nlc/solver/cauchy.hpp"
#include "nlc/spaces/corpus.hpp"
#include "nlc/spaces/norms.hpp"
#include "nlc/symbol/multiplier.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::cli {
namespace {

using levy::LevyMeasure;
using levy::ScalingTriple;
constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

void add(CriterionResult& c, const CheckReport& r, const std::string& label) {
  c.reports.push_back(r);
  c.details.push_back(label + " " + (r.passed() ? "ok" : "FAILED") + " (" + fmt(r.value) + ")");
}

CheckReport tolerance_report(const std::string& id, double value, double bound, const std::string& what) {
  CheckReport r;
  r.lemma_id = id;
  r.value = value;
  r.bound = bound;
  r.require(value <= bound, what);
  return r;
}

Field single_mode(const GridSpec& g, int k) {
  Field f(g);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(2.0 * kPi * k * g.point(i)[0] / g.L);
  return f;
}

levy::BernsteinModel bernstein_example() {
  return levy::bernstein_measure(levy::shifted_power(0.7, 0.5), 1);
}

// ---------------------------------------------------------------- 1
void symbol_oracle(CriterionResult& c, const AcceptanceOptions&) {
  const auto m = LevyMeasure::stable(1, 1.0);
  const GridSpec g(1, 256, 16.0);
  const auto psi = spectral::symbol(m, g);
  double worst = 0.0;
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double xi = std::abs(g.frequency(k)[0]);
    if (xi > 8.0) continue;
    const double exact = -2.0 * kPi * kPi * xi;
    worst = std::max(worst, std::abs(psi[k] - exact) / std::abs(exact));
  }
  add(c, tolerance_report("symbol", worst, 1e-4, "relative symbol error on |xi| <= 8"), "max rel error");
}

// ---------------------------------------------------------------- 2
void density_oracle(CriterionResult& c, const AcceptanceOptions&) {
  const auto m = LevyMeasure::stable(1, 1.0);
  const GridSpec g(1, 4096, 64.0);
  const auto psi = spectral::symbol(m, g);
  double worst = 0.0, defect = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto p = density::density_from_symbol(psi, t);
    const double w = 2.0 * kPi * kPi * t / g.L;  // 2 pi c / L with scale c = pi t
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.point(i)[0];
      const double exact = std::sinh(w) / (g.L * (std::cosh(w) - std::cos(2.0 * kPi * x / g.L)));
      worst = std::max(worst, std::abs(p[i].real() - exact) / exact);
    }
    defect = std::max(defect, density::density_diagnostics(psi, t, t).semigroup_defect);
  }
  add(c, tolerance_report("density", worst, 1e-4, "sup relative error vs periodised Cauchy"), "sup rel error");
  add(c, tolerance_report("semigroup", defect, 1e-9, "L1 semigroup defect"), "semigroup defect");
}

// ---------------------------------------------------------------- 3
void scaling_identity(CriterionResult& c, const AcceptanceOptions&) {
  const auto ts = levy::log_grid(0.1, 10.0, 7);
  const auto stable = LevyMeasure::stable(1, 1.0);
  add(c, density::density_scaling_check(stable, ScalingTriple::power(1.0), ts, 1, 2048, 1e-8), "stable");
  const auto b = bernstein_example();
  add(c, density::density_scaling_check(b.measure, b.scaling, ts, 1, 2048, 1e-4), "bernstein");
}

// ---------------------------------------------------------------- 4
void solver_checks(CriterionResult& c, const AcceptanceOptions& opt) {
  const auto pi = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  const GridSpec g(1, 128, 16.0);
  const int k0 = 3;
  const double xi0 = k0 / g.L;
  const double psi0 = -2.0 * kPi * kPi * xi0;  // closed-form Cauchy symbol

  // Single mode, f = 0.
  solver::CauchyProblem pb(pi, pi, kappa);
  pb.lambda = 0.5;
  pb.T = 1.0;
  pb.g = single_mode(g, k0);
  const auto sol = solver::solve(pb, 32);
  double err = 0.0;
  for (std::size_t k = 0; k < sol.u.slices.size(); ++k) {
    const double a = std::exp((psi0 - pb.lambda) * sol.u.time(k));
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(sol.u.slices[k][i] - a * pb.g[i]));
  }
  // Constant source at the zero mode with lambda = 0: u = t.
  solver::CauchyProblem pc(pi, pi, kappa);
  pc.T = 1.0;
  pc.g = Field(g);
  pc.f.grid = g;
  pc.f.T = 1.0;
  Field one(g);
  for (auto& v : one.values) v = 1.0;
  pc.f.slices.assign(17, one);
  const auto solc = solver::solve(pc, 16);
  for (std::size_t k = 0; k < solc.u.slices.size(); ++k)
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(solc.u.slices[k][i] - solc.u.time(k)));
  add(c, tolerance_report("mode_exactness", err, 1e-12, "per-mode Duhamel exactness"), "mode exactness");

  add(c, solver::residual_convergence(pb, {16, 32, 64, 128}), "residual slope");

  // Feynman-Kac cross-check: datum with three modes, source linear in time.
  solver::CauchyProblem pm(pi, pi, kappa);
  pm.lambda = 0.3;
  pm.T = 1.0;
  pm.g = Field(g);
  const auto m1 = single_mode(g, 1), m2 = single_mode(g, 2), m5 = single_mode(g, 5);
  for (std::size_t i = 0; i < g.size(); ++i) pm.g[i] = 1.0 + m1[i] - 0.5 * m2[i];
  const int steps = 32;
  pm.f.grid = g;
  pm.f.T = pm.T;
  for (int k = 0; k <= steps; ++k) {
    Field s(g);
    const double t = pm.T * k / steps;
    for (std::size_t i = 0; i < g.size(); ++i) s[i] = (1.0 + t) * m5[i];
    pm.f.slices.push_back(std::move(s));
  }
  const auto solm = solver::solve(pm, steps);
  const mc::BandLimited u_end(solm.u.slices.back());
  std::vector<mc::Point> probes;
  for (int j = 0; j < 10; ++j) probes.push_back({-0.5 * g.L + (j + 0.37) * g.L / 10.0, 0.0, 0.0});
  const mc::PathSampler sampler(pi, 1e-3, opt.seed);
  const auto fk = mc::feynman_kac(sampler, pm.lambda, &pm.f, pm.g, pm.T, probes, opt.mc_paths);
  CheckReport r;
  r.lemma_id = "feynman_kac";
  double worst = 0.0;
  for (std::size_t j = 0; j < probes.size(); ++j) {
    const double spec = u_end(probes[j]);
    const double z = std::abs(spec - fk.probes[j].estimate) / fk.probes[j].stderr_;
    worst = std::max(worst, z);
    r.metrics["z_probe" + std::to_string(j)] = z;
  }
  r.value = worst;
  r.bound = 3.0;
  r.metrics["n_paths"] = static_cast<double>(opt.mc_paths);
  r.require(worst <= 3.0, "spectral solution within 3 SE of the path estimate at every probe");
  add(c, r, "MC cross-check max |z|");
}

// ---------------------------------------------------------------- 5
void apriori_family(CriterionResult& c, const AcceptanceOptions& opt) {
  const GridSpec g(1, 128, 16.0);
  const int steps = 64;
  const auto mu = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  const auto ctx = spaces::make_context(2, g, kappa, spectral::symbol_sym(mu, g), 1.5);
  const auto family = solver::random_family(20, opt.seed, g, steps);
  double worst_r2 = 0.0, worst_h5 = -INFINITY, worst_h40 = -INFINITY, r1_lo = INFINITY, r1_hi = 0.0;
  int failures = 0;
  for (const auto& pb : family) {
    const auto sol = solver::solve(pb, steps);
    const auto rep = solver::apriori_report(pb, sol, ctx);
    if (!rep.passed()) ++failures;
    worst_r2 = std::max(worst_r2, rep.metrics.at("r2"));
    worst_h5 = std::max(worst_h5, rep.metrics.at("h5_gap"));
    worst_h40 = std::max(worst_h40, rep.metrics.at("h40_worst_gap"));
    r1_lo = std::min(r1_lo, rep.metrics.at("r1"));
    r1_hi = std::max(r1_hi, rep.metrics.at("r1"));
  }
  CheckReport r;
  r.lemma_id = "le0_t1";
  r.value = worst_r2;
  r.bound = 1.0 + 1e-6;
  r.metrics["worst_r2"] = worst_r2;
  r.metrics["worst_h5_gap"] = worst_h5;
  r.metrics["worst_h40_gap"] = worst_h40;
  r.metrics["r1_min"] = r1_lo;
  r.metrics["r1_max"] = r1_hi;
  r.metrics["r1_spread"] = r1_hi / r1_lo;
  r.metrics["failed_problems"] = failures;
  r.require(failures == 0, "every problem satisfies h5, h40 and r2' <= 1 + 1e-6");
  add(c, r, "worst r2'");
  c.details.push_back("h5 gap " + fmt(worst_h5) + ", h40 gap " + fmt(worst_h40) + ", r1 spread " +
                      fmt(r1_hi / r1_lo));
}

// ---------------------------------------------------------------- 6
struct RatioIntervals {
  std::map<std::string, std::pair<double, double>> by_name;
};

RatioIntervals norm_ratios(int n, int N, const std::vector<Field>& corpus_coarse) {
  const double L = 1.0, s = 0.5, p = 2.0, q = 2.0;
  const GridSpec g(1, n, L);
  const auto mu = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  const auto ctx = spaces::make_context(N, g, kappa, spectral::symbol_sym(mu, g), 1.5);
  const int m = spaces::least_difference_order(s, ctx.alpha1);
  spaces::CorpusSpec cs;
  RatioIntervals out;
  auto update = [&](const std::string& name, double v) {
    auto it = out.by_name.find(name);
    if (it == out.by_name.end()) out.by_name[name] = {v, v};
    else it->second = {std::min(it->second.first, v), std::max(it->second.second, v)};
  };
  for (std::size_t i = 0; i < corpus_coarse.size(); ++i) {
    const auto f = g.n == corpus_coarse[i].grid.n ? corpus_coarse[i] : spaces::band_limited_member(g, cs, i);
    using spaces::Weighting;
    const double bk = spaces::besov_norm(f, s, p, q, Weighting::Kappa, ctx).value;
    const double bb = spaces::besov_norm(f, s, p, q, Weighting::Bessel, ctx).value;
    const double hk = spaces::triebel_norm(f, s, p, Weighting::Kappa, ctx).value;
    const double hb = spaces::triebel_norm(f, s, p, Weighting::Bessel, ctx).value;
    const double dh = spaces::difference_norm(f, s, p, q, m, spaces::DifferenceVariant::Triebel, ctx).value;
    const double db = spaces::difference_norm(f, s, p, q, m, spaces::DifferenceVariant::Besov, ctx).value;
    update("pro1_besov_kappa_over_bessel", bk / bb);
    update("pro2_square_over_direct", hk / hb);
    update("pk2_difference_over_bessel_H", dh / hb);
    update("pk2_difference_over_bessel_B", db / bb);
  }
  return out;
}

void norm_equivalences(CriterionResult& c, const AcceptanceOptions&) {
  const int n0 = 64;
  spaces::CorpusSpec cs;
  const auto corpus = spaces::band_limited_corpus(GridSpec(1, n0, 1.0), cs);
  const auto base = norm_ratios(n0, 2, corpus);
  const std::vector<std::pair<std::string, RatioIntervals>> variants = {
      {"grid doubling", norm_ratios(2 * n0, 2, corpus)}, {"N = 3", norm_ratios(n0, 3, corpus)}};
  for (const auto& [name, lohi] : base.by_name) {
    CheckReport r;
    r.lemma_id = name;
    r.metrics["base_min"] = lohi.first;
    r.metrics["base_max"] = lohi.second;
    double worst = 0.0;
    for (const auto& [label, v] : variants) {
      const auto& o = v.by_name.at(name);
      const double dev = std::max(std::abs(o.first / lohi.first - 1.0), std::abs(o.second / lohi.second - 1.0));
      r.metrics["deviation_" + label] = dev;
      r.metrics["min_" + label] = o.first;
      r.metrics["max_" + label] = o.second;
      worst = std::max(worst, dev);
    }
    r.value = worst;
    r.bound = 0.1;
    r.require(worst <= 0.1, "ratio interval stable within 10%");
    add(c, r, name + " [" + fmt(lohi.first) + ", " + fmt(lohi.second) + "]");
  }
}

// ---------------------------------------------------------------- 7
void moment_audit(CriterionResult& c, const AcceptanceOptions& opt) {
  const auto m = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  mc::MomentAuditSpec spec;
  spec.alpha2 = 0.5;
  spec.t_grid = levy::log_grid(0.1, 10.0, 5);
  spec.n_paths = opt.mc_paths;
  spec.eps = 0.05;
  // Self-similarity with scale pi t: E|Z_t|^{1/2} = sqrt(pi t) E|C|^{1/2} = sqrt(2 pi t).
  spec.reference = [](double t) { return std::sqrt(2.0 * kPi * t); };
  add(c, mc::moment_audit(m, &kappa, spec, opt.seed), "Cauchy envelope slope");
}

// ---------------------------------------------------------------- 8
void hormander(CriterionResult& c, const AcceptanceOptions&) {
  const auto m = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  density::HormanderSpec spec;
  const auto samples = density::extremal_samples(kappa, 1, 1e-2, 1.0, 20);
  const auto r = density::hormander_audit(m, m, kappa, samples, spec);
  add(c, r, "max integral");
  if (r.metrics.count("trend_slope")) c.details.push_back("trend slope " + fmt(r.metrics.at("trend_slope")));
}

// ---------------------------------------------------------------- 9
void embedding(CriterionResult& c, const AcceptanceOptions& opt) {
  const auto pi = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  const GridSpec g(1, 256, 16.0);
  spaces::CorpusSpec cs;
  cs.seed = opt.seed;
  const auto f = spaces::band_limited_member(g, cs, 0);
  for (double delta : {1.0, 0.5}) {
    // With gamma(t) = t the small-time precheck needs 1 - 1/q < delta.
    const double q = delta == 1.0 ? 2.0 : 1.5;
    double worst = 0.0;
    CheckReport agg;
    agg.lemma_id = "kl1";
    for (double z : {0.05, 0.3, 1.0}) {
      const auto r = density::representation_check(pi, kappa, delta, {z, 0.0, 0.0}, f, q);
      worst = std::max(worst, r.value);
      agg.metrics["error_z" + fmt(z)] = r.value;
      if (!r.passed()) agg.require(false, "representation at |z| = " + fmt(z));
    }
    agg.value = worst;
    agg.bound = 1e-3;
    agg.fitted_constants["c"] = density::representation_constant(delta);
    agg.require(worst <= 1e-3, "max representation error <= 1e-3");
    add(c, agg, "kl1 delta=" + fmt(delta) + " max error");
  }
  // The modulus bound needs int_1^inf gamma^-1 < inf, which order 1/2 provides.
  const auto pi_h = LevyMeasure::stable(1, 0.5);
  const auto kappa_h = ScalingTriple::power(0.5);
  const auto hr = density::holder_modulus_audit(pi_h, kappa_h, f, levy::log_grid(1e-3, 1.0, 13), 2.0, 1.0);
  add(c, hr.modulus, "ccc1 modulus constant");
}

// ---------------------------------------------------------------- 10
void assumptions(CriterionResult& c, const AcceptanceOptions&) {
  const auto R_grid = levy::log_grid(1e-2, 1e2, 9);
  {
    const auto m = LevyMeasure::stable(1, 0.5);
    levy::AssumptionParams ap;
    ap.alpha1 = 1.0;
    ap.alpha2 = 0.25;
    ap.N0 = 13.0;
    auto r = levy::check_assumption_B(m, ScalingTriple::power(0.5), ap, R_grid);
    const double spread = r.metrics.at("relative_spread");
    const double oracle_gap = std::abs(r.value - 12.0) / 12.0;
    r.metrics["closed_form_gap"] = oracle_gap;
    r.require(spread <= 1e-8, "B integrals R-independent to 1e-8");
    r.require(oracle_gap <= 1e-8, "B supremum equals 2/(a1 - s) + 2/(s - a2)");
    add(c, r, "stable B spread " + fmt(spread) + ", value");
  }
  const auto b = bernstein_example();
  const double d1 = b.audit.delta1, d2 = b.audit.delta2;
  levy::AssumptionParams ap;
  ap.alpha1 = 1.2;
  ap.alpha2 = 0.5;
  add(c, levy::check_assumption_B(b.measure, b.scaling, ap, R_grid), "B");
  const double c1 = levy::fit_lower_measure_constant(b.measure, b.scaling, 2.0 * d1, R_grid);
  const auto mu0 = LevyMeasure::stable(1, 2.0 * d1, c1).truncated(1.0);
  add(c, levy::check_assumption_D(b.measure, mu0, b.scaling, R_grid), "D");
  add(c, b.audit.kernel_report, "H(i)");
  add(c, b.audit.ratio_report, "H(ii)");
  add(c, levy::check_angular_nondegeneracy(b.measure, 1.0, 1.0), "G");
  c.details.push_back("fitted delta1 " + fmt(d1) + ", delta2 " + fmt(d2) + ", N " + fmt(b.audit.N_kernel) +
                      ", c1 " + fmt(c1));
}

// ---------------------------------------------------------------- 11
void kernel_bounds(CriterionResult& c, const AcceptanceOptions&) {
  struct Member {
    double sigma, alpha2;
  };
  for (const Member& mb : {Member{0.5, 0.45}, Member{1.0, 0.95}, Member{1.5, 1.45}}) {
    const auto m = LevyMeasure::stable(1, mb.sigma);
    const auto kappa = ScalingTriple::power(mb.sigma);
    for (int k : {0, 1}) {
      density::KernelBoundSpec spec;
      spec.k = {k, 0, 0};
      spec.t_grid = levy::log_grid(0.1, 10.0, 7);
      spec.c_grid = levy::log_grid(300.0, 3000.0, 5);
      spec.alpha2 = mb.alpha2;
      const auto r = density::kernel_bound_audit(m, m, kappa, spec);
      add(c, r, "sigma=" + fmt(mb.sigma) + " k=" + std::to_string(k) + " t-slope");
      if (r.metrics.count("slope_c")) c.details.push_back("c-slope " + fmt(r.metrics.at("slope_c")));
    }
  }
}

struct Entry {
  const char* title;
  double budget;
  void (*run)(CriterionResult&, const AcceptanceOptions&);
};

const Entry kEntries[kCriterionCount] = {
    {"symbol oracle", 1.0, symbol_oracle},
    {"density oracle", 2.0, density_oracle},
    {"scaling identity", 30.0, scaling_identity},
    {"solver", 60.0, solver_checks},
    {"a-priori inequalities", 0.0, apriori_family},
    {"norm equivalences", 120.0, norm_equivalences},
    {"moment audit", 0.0, moment_audit},
    {"Hormander audit", 120.0, hormander},
    {"embedding audits", 0.0, embedding},
    {"assumption verifiers", 0.0, assumptions},
    {"kernel bound audit", 0.0, kernel_bounds},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id must be in 1..11");
  const auto& e = kEntries[id - 1];
  CriterionResult c;
  c.id = id;
  c.title = e.title;
  c.budget = e.budget;
  spectral::multiplier_cache().clear();
  const auto start = std::chrono::steady_clock::now();
  try {
    e.run(c, opt);
    c.checks_passed = !c.reports.empty() &&
                      std::all_of(c.reports.begin(), c.reports.end(), [](const CheckReport& r) { return r.passed(); });
  } catch (const std::exception& ex) {
    c.checks_passed = false;
    c.details.push_back(std::string("error: ") + ex.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!c.within_budget()) c.details.push_back("over the time budget");
  return c;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS " : "FAIL ") << (r.id < 10 ? "0" : "") << r.id << " " << r.title << " ("
     << fmt(r.seconds) << " s";
  if (r.budget > 0.0) os << " / " << r.budget << " s";
  os << ")";
  for (std::size_t i = 0; i < r.details.size(); ++i) os << (i == 0 ? ": " : "; ") << r.details[i];
  return os.str();
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["status"] = r.passed() ? "PASS" : "FAIL";
  j["checks_passed"] = r.checks_passed;
  j["budget_s"] = r.budget;
  j["details"] = r.details;
  j["reports"] = nlohmann::json::array();
  for (const auto& c : r.reports) j["reports"].push_back(nlc::to_json(c));
  return j;
}

}  // namespace nlc::cli
