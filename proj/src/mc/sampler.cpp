#include "nlc/mc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/parallel.hpp"
#include "nlc/core/rng.hpp"
#include "nlc/core/stats.hpp"
#include "nlc/density/density.hpp"
#include "nlc/levy/radial_profile.hpp"

namespace nlc::mc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNodesPerDecade = 40.0;

// Mass of c r^beta on [r0, r1].
double power_mass(double f0, double r0, double r1, double beta) {
  const double e = beta + 1.0;
  if (std::abs(e) < 1e-9) return f0 * r0 * std::log(r1 / r0);
  return f0 * r0 / e * (std::pow(r1 / r0, e) - 1.0);
}

// Solve power_mass(f0, r0, r, beta) = m for r.
double power_inverse(double f0, double r0, double beta, double m) {
  const double e = beta + 1.0;
  if (std::abs(e) < 1e-9) return r0 * std::exp(m / (f0 * r0));
  return r0 * std::pow(1.0 + e * m / (f0 * r0), 1.0 / e);
}

std::string tagged(const std::string& name, double v) {
  std::ostringstream os;
  os.precision(4);
  os << name << "=" << v;
  return os.str();
}

void alpha2_regime(double sigma, double alpha2) {
  bool ok;
  if (sigma < 1.0) ok = alpha2 > 0.0 && alpha2 <= 1.0;
  else if (sigma > 1.0) ok = alpha2 > 1.0 && alpha2 <= 2.0;
  else ok = alpha2 >= 0.0 && alpha2 < 1.0;
  if (!ok) throw DomainError("alpha2 outside the regime table for this order");
}

}  // namespace

PathSampler::PathSampler(const levy::LevyMeasure& measure, double jump_cut, std::uint64_t seed)
    : measure_(measure), d_(measure.dim()), eps_(jump_cut), seed_(seed) {
  if (measure.is_difference()) throw DomainError("signed measures do not generate a process");
  if (!(jump_cut > 0.0) || !std::isfinite(jump_cut))
    throw DomainError("jump cut must be positive: eps = 0 gives an infinite large-jump rate");
  const double sigma = measure.sigma();
  gaussian_ = sigma >= 1.0;
  const auto& atoms = measure.atoms();
  const double cut = measure.radial_cutoff();
  const auto* power = dynamic_cast<const levy::PowerProfile*>(&measure.profile());

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    AtomTable tab;
    if (power && !measure.has_angular_factor() && std::isinf(cut)) {
      // density = K r^{-1-sigma}: mass K eps^-sigma / sigma, exact inverse.
      const double K = measure.density(1.0, i);
      tab.pareto = true;
      tab.pareto_sigma = power->sigma();
      tab.mass = K * std::pow(eps_, -tab.pareto_sigma) / tab.pareto_sigma;
    } else if (eps_ < cut) {
      const double r_hi = std::min(cut, std::max(1.0, eps_) * 1e10);
      const int nodes = std::max(2, static_cast<int>(std::ceil(std::log10(r_hi / eps_) * kNodesPerDecade)) + 1);
      tab.r.resize(nodes);
      for (int k = 0; k < nodes; ++k) tab.r[k] = eps_ * std::pow(r_hi / eps_, static_cast<double>(k) / (nodes - 1));
      tab.r.back() = r_hi;
      std::vector<double> f(nodes);
      for (int k = 0; k < nodes; ++k) f[k] = measure.density(std::min(tab.r[k], r_hi), i);
      tab.cum.assign(nodes, 0.0);
      tab.beta.assign(nodes - 1, 0.0);
      for (int k = 0; k + 1 < nodes; ++k) {
        const double b = (f[k] > 0.0 && f[k + 1] > 0.0) ? std::log(f[k + 1] / f[k]) / std::log(tab.r[k + 1] / tab.r[k]) : 0.0;
        tab.beta[k] = b;
        tab.cum[k + 1] = tab.cum[k] + (f[k] > 0.0 ? power_mass(f[k], tab.r[k], tab.r[k + 1], b) : 0.0);
      }
      tab.mass = tab.cum.back();
      if (std::isinf(cut) || r_hi < cut) {
        tab.tail_beta = measure.density_log_slope(r_hi, i);
        if (!(tab.tail_beta < -1.0)) throw NumericalGuard("large-jump tail is not integrable");
        tab.mass += -f.back() * r_hi / (tab.tail_beta + 1.0);
      } else {
        tab.tail_beta = kInf;  // no mass beyond the cutoff
      }
    }
    rate_ += atoms[i].weight * tab.mass;
    tables_.push_back(std::move(tab));
  }
  atom_cdf_.resize(atoms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    acc += atoms[i].weight * tables_[i].mass;
    atom_cdf_[i] = rate_ > 0.0 ? acc / rate_ : 1.0;
  }

  auto moment = [&](std::size_t i, double k, double a, double b) {
    return measure.atom_moment(i, [k](double r) { return std::pow(r, k); }, a, b);
  };
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& w = atoms[i].direction;
    const double wt = atoms[i].weight;
    if (sigma < 1.0) {
      bias_ += wt * moment(i, 1.0, 0.0, eps_);
      continue;
    }
    const double second = moment(i, 2.0, 0.0, eps_);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) cov_[a][b] += wt * w[a] * w[b] * second;
    double first;
    if (sigma > 1.0) {
      first = -moment(i, 1.0, eps_, kInf);
    } else {
      first = eps_ > 1.0 ? moment(i, 1.0, 1.0, eps_) : -moment(i, 1.0, eps_, 1.0);
    }
    for (int a = 0; a < 3; ++a) drift_[a] += wt * w[a] * first;
  }
  // The cancellation condition makes the order-one drift vanish exactly.
  if (sigma == 1.0 && measure.angular_symmetric()) drift_ = {0.0, 0.0, 0.0};
  // Cholesky with zero pivots tolerated (degenerate directions).
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b <= a; ++b) {
      double s = cov_[a][b];
      for (int k = 0; k < b; ++k) s -= chol_[a][k] * chol_[b][k];
      if (a == b) chol_[a][a] = s > 0.0 ? std::sqrt(s) : 0.0;
      else chol_[a][b] = chol_[b][b] > 0.0 ? s / chol_[b][b] : 0.0;
    }
  }
}

PathSampler PathSampler::with_bias_target(const levy::LevyMeasure& measure, double target, double eps0,
                                          std::uint64_t seed) {
  PathSampler s(measure, eps0, seed);
  for (int k = 0; k < 200 && s.bias_bound() > target; ++k) s = PathSampler(measure, s.jump_cut() * 0.5, seed);
  if (s.bias_bound() > target) throw NumericalGuard("bias target unreachable");
  return s;
}

double PathSampler::draw_radius(const AtomTable& tab, double u) const {
  if (tab.pareto) return eps_ * std::pow(u, -1.0 / tab.pareto_sigma);
  const double m = u * tab.mass;
  if (m >= tab.cum.back()) {
    const double rest = tab.mass - tab.cum.back();
    const double frac = rest > 0.0 ? (tab.mass - m) / rest : 1.0;  // conditional survival
    return tab.r.back() * std::pow(std::max(frac, 1e-300), 1.0 / (tab.tail_beta + 1.0));
  }
  const auto it = std::upper_bound(tab.cum.begin(), tab.cum.end(), m);
  const std::size_t k = static_cast<std::size_t>(it - tab.cum.begin()) - 1;
  const double f0 = (tab.cum[k + 1] - tab.cum[k]) /
                    power_mass(1.0, tab.r[k], tab.r[k + 1], tab.beta[k]);
  return std::min(tab.r[k + 1], power_inverse(f0, tab.r[k], tab.beta[k], m - tab.cum[k]));
}

std::vector<Point> PathSampler::sample_at(const std::vector<double>& times, std::uint64_t index) const {
  std::vector<Point> out(times.size(), Point{0.0, 0.0, 0.0});
  if (times.empty()) return out;
  const auto& atoms = measure_.atoms();
  PhiloxStream jumps(seed_, index, 0);
  PhiloxStream gauss(seed_, index, 1);
  Point z{0.0, 0.0, 0.0};
  double clock = 0.0, prev = 0.0;
  std::size_t next = 0;
  auto record_until = [&](double tau) {
    while (next < times.size() && times[next] < tau) {
      const double tn = times[next];
      Point g{0.0, 0.0, 0.0};
      if (gaussian_) {
        double n[4];
        box_muller(gauss.uniform(), gauss.uniform(), n[0], n[1]);
        box_muller(gauss.uniform(), gauss.uniform(), n[2], n[3]);
        const double sq = std::sqrt(std::max(0.0, tn - prev));
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b <= a; ++b) g[a] += chol_[a][b] * n[b] * sq;
      }
      for (int a = 0; a < 3; ++a) z[a] += g[a] + drift_[a] * (tn - prev);
      prev = tn;
      out[next++] = z;
    }
  };
  if (rate_ > 0.0) {
    while (next < times.size()) {
      clock += -std::log(jumps.uniform()) / rate_;
      record_until(clock);
      if (next >= times.size()) break;
      const double ua = jumps.uniform();
      std::size_t i = static_cast<std::size_t>(
          std::lower_bound(atom_cdf_.begin(), atom_cdf_.end(), ua) - atom_cdf_.begin());
      i = std::min(i, atoms.size() - 1);
      const double r = draw_radius(tables_[i], jumps.uniform());
      for (int a = 0; a < 3; ++a) z[a] += r * atoms[i].direction[a];
    }
  } else {
    record_until(kInf);
  }
  for (int a = d_; a < 3; ++a)
    for (auto& p : out) p[a] = 0.0;
  return out;
}

Point PathSampler::sample(double t, std::uint64_t index) const {
  if (!(t >= 0.0)) throw DomainError("sampling time must be >= 0");
  return sample_at({t}, index).front();
}

std::vector<Point> sample_paths(const PathSampler& sampler, double t, std::size_t n_paths) {
  if (n_paths < 1) throw DomainError("need at least one path");
  std::vector<Point> out(n_paths);
  parallel_for(n_paths, [&](std::size_t i) { out[i] = sampler.sample(t, i); });
  return out;
}

CheckReport moment_audit(const levy::LevyMeasure& measure, const levy::ScalingTriple* kappa,
                         const MomentAuditSpec& spec, std::uint64_t seed) {
  alpha2_regime(measure.sigma(), spec.alpha2);
  if (spec.t_grid.size() < 2) throw DomainError("moment audit needs at least two times");
  CheckReport r;
  r.lemma_id = "al00";
  std::vector<double> ts, upper;
  double C = 0.0;
  for (double t : spec.t_grid) {
    const double eps = spec.eps * (kappa ? std::max(1.0, kappa->a(t)) : 1.0);
    const PathSampler s(measure, eps, seed);
    const auto pts = sample_paths(s, t, spec.n_paths);
    std::vector<double> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      v[i] = std::pow(std::sqrt(pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1] + pts[i][2] * pts[i][2]),
                      spec.alpha2);
    const auto sum = summarize(v);
    const double est = sum.mean / (1.0 + t);
    const double up = (sum.mean + 1.96 * sum.stderr_) / (1.0 + t);
    ts.push_back(t);
    upper.push_back(up);
    C = std::max(C, up);
    r.metrics[tagged("moment_t", t)] = sum.mean;
    r.metrics[tagged("stderr_t", t)] = sum.stderr_;
    r.metrics[tagged("ratio_t", t)] = est;
    r.metrics[tagged("bias_bound_t", t)] = s.bias_bound() * t;
    if (spec.reference) {
      const double z = std::abs(sum.mean - spec.reference(t)) / sum.stderr_;
      r.metrics[tagged("reference_z_t", t)] = z;
      r.require(z <= 3.0, "estimate within 3 SE of the closed form at t = " + std::to_string(t));
    }
  }
  const auto fit = fit_loglog(ts, upper);
  r.metrics["envelope_slope"] = fit.slope;
  r.value = fit.slope;
  r.bound = spec.slope_tol;
  r.fitted_constants["C"] = C;
  r.require(fit.slope <= spec.slope_tol, "upper envelope of E|Z_t|^a2/(1+t) has no growth trend");
  return r;
}

CheckReport chi_square_check(const PathSampler& sampler, double t, std::size_t n_paths, double L,
                             int n_grid, int bins) {
  if (sampler.dim() != 1) throw DomainError("chi-square check is implemented for d = 1");
  CheckReport r;
  r.lemma_id = "mc_density";
  const GridSpec g(1, n_grid, L);
  const auto p = density::density(sampler.measure(), t, g);
  const double h = g.h();
  // Law of Z_t on the grid: reflect x -> -x.
  std::vector<double> mass(n_grid);
  for (int j = 0; j < n_grid; ++j) mass[j] = std::max(0.0, p[(n_grid - j) % n_grid].real()) * h;
  // Cumulative at cell edges x_j - h/2.
  std::vector<double> edge_x(n_grid + 1), cum(n_grid + 1, 0.0);
  for (int j = 0; j <= n_grid; ++j) edge_x[j] = -0.5 * L + (j - 0.5) * h;
  for (int j = 0; j < n_grid; ++j) cum[j + 1] = cum[j] + mass[j];
  const double total = cum.back();
  std::vector<double> cuts(bins - 1);
  for (int b = 1; b < bins; ++b) {
    const double target = total * b / bins;
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    const std::size_t k = static_cast<std::size_t>(it - cum.begin());
    const double w = (target - cum[k - 1]) / (cum[k] - cum[k - 1]);
    cuts[b - 1] = edge_x[k - 1] + w * h;
  }
  // The first cell straddles -L/2; map samples into [-L/2 - h/2, L/2 - h/2).
  const double lo = -0.5 * L - 0.5 * h;
  const auto pts = sample_paths(sampler, t, n_paths);
  std::vector<double> counts(bins, 0.0);
  for (const auto& z : pts) {
    double x = z[0] - lo;
    x = x - L * std::floor(x / L) + lo;
    const std::size_t b = static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
    counts[b] += 1.0;
  }
  const double expect = static_cast<double>(n_paths) / bins;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expect) * (c - expect) / expect;
  const double pv = chi_square_pvalue(chi2, bins - 1);
  r.value = pv;
  r.bound = 0.01;
  r.metrics["chi2"] = chi2;
  r.metrics["p_value"] = pv;
  r.metrics["reference_mass"] = total;
  r.metrics["bias_bound"] = sampler.bias_bound() * t;
  r.require(pv > 0.01, "chi-square p-value > 0.01");
  return r;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double D = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    D = std::max({D, F - i / n, (i + 1) / n - F});
  }
  return D;
}

}  // namespace nlc::mc
