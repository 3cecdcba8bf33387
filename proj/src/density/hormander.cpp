#include "nlc/density/hormander.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/quadrature.hpp"
#include "nlc/core/stats.hpp"
#include "nlc/density/density.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::density {

double default_C0(const levy::ScalingTriple& kappa) {
  const double l1 = kappa.l(1.0);
  for (int k = 301; k <= 1000000; ++k) {
    const double c = 0.01 * k;
    if (3.0 * l1 * kappa.l(1.0 / c) < 1.0) return c;
  }
  throw NumericalGuard("no C0 <= 1e4 satisfies 3 l(1) l(1/C0) < 1");
}

std::vector<HormanderSample> extremal_samples(const levy::ScalingTriple& kappa, int d, double delta_lo,
                                              double delta_hi, int count) {
  (void)d;
  std::vector<HormanderSample> out;
  for (double delta : levy::log_grid(delta_lo, delta_hi, count))
    out.push_back({kappa.kappa(delta), {delta, 0.0, 0.0}, delta});
  return out;
}

double hormander_integral(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                          const levy::ScalingTriple& kappa, const HormanderSample& sample,
                          const HormanderSpec& spec) {
  const double delta = sample.delta;
  if (!(delta > 0.0)) throw DomainError("Hormander sample needs delta > 0");
  const double kd = kappa.kappa(delta);
  const double ynorm =
      std::sqrt(sample.y[0] * sample.y[0] + sample.y[1] * sample.y[1] + sample.y[2] * sample.y[2]);
  if (std::abs(sample.s) > kd * (1.0 + 1e-12) || ynorm > delta * (1.0 + 1e-12))
    throw DomainError("Hormander sample outside |s| <= kappa(delta), |y| <= delta");
  const double C0 = spec.C0 > 0.0 ? spec.C0 : default_C0(kappa);

  // Unit-scale problem.
  const auto pi_u = levy::scale_measure(pi, delta, kappa);
  const auto mu_u = levy::scale_measure(mu, delta, kappa);
  const double lam = spec.lambda * kd;
  const double s = sample.s / kd;
  const std::array<double, 3> y{sample.y[0] / delta, sample.y[1] / delta, sample.y[2] / delta};
  const double TQ = kappa.kappa(C0 * delta) / kd;

  const GridSpec g(spec.d, spec.n, spec.L);
  const auto psi_pi = spectral::symbol(pi_u, g);
  auto psi_mu = spectral::symbol(mu_u, g);
  for (auto& v : psi_mu.values) v = std::conj(v);  // mu*(dy) = mu(-dy)
  const double tau_min = alias_time(psi_mu);
  double slowest = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < g.size(); ++i) slowest = std::max(slowest, psi_mu.values[i].real());
  const double rate = slowest - lam;
  if (!(rate < 0.0)) throw NumericalGuard("time truncation envelope is never reached");
  const double T_max = std::max(2.0 * TQ, std::log(spec.envelope) / rate);
  if (T_max > 1e8) throw NumericalGuard("time truncation beyond 1e8; widen the torus or add damping");

  std::vector<char> outside(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    outside[i] = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) > C0;
  }
  std::vector<cplx> shift(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto xi = g.frequency(i);
    const double ph = -2.0 * std::numbers::pi * (xi[0] * y[0] + xi[1] * y[1] + xi[2] * y[2]);
    shift[i] = {std::cos(ph), std::sin(ph)};
  }
  // Densities below the alias time are frozen at tau_min; the integrand is
  // bounded there because short times only enter off the ball.
  auto kernel = [&](double tau, bool shifted) {
    std::vector<cplx> c(g.size());
    const double te = std::max(tau, tau_min);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = psi_pi.values[i] * std::exp(psi_mu.values[i] * te - lam * tau);
      if (shifted) c[i] *= shift[i];
    }
    return inverse(g, std::move(c));
  };
  auto integrand = [&](double t) {
    const bool a_on = t - s > 0.0, b_on = t > 0.0;
    Field A = a_on ? kernel(t - s, true) : Field(g);
    Field B = b_on ? kernel(t, false) : Field(g);
    const bool inside_window = std::abs(t) < TQ;
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!inside_window || outside[i]) acc += std::abs(A[i] - B[i]);
    return acc * g.cell_volume();
  };

  std::set<double> cuts{std::min(0.0, s), std::max(0.0, s), TQ, T_max};
  std::vector<double> pts(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k], hi = pts[k + 1];
    if (!(hi > lo)) continue;
    const double len = hi - lo;
    const double u0 = std::min(1e-8, 1e-6 * len);
    const auto q = log_panels_per_decade(u0, len, spec.per_decade, 10);
    for (std::size_t i = 0; i < q.size(); ++i) total += q.w[i] * integrand(lo + q.x[i]);
    total += u0 * integrand(lo + u0);
  }
  return total;
}

CheckReport hormander_audit(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                            const levy::ScalingTriple& kappa,
                            const std::vector<HormanderSample>& samples, const HormanderSpec& spec) {
  CheckReport r;
  r.lemma_id = "mainl";
  const double C0 = spec.C0 > 0.0 ? spec.C0 : default_C0(kappa);
  r.fitted_constants["C0"] = C0;
  std::vector<double> deltas, values;
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    HormanderSpec sp = spec;
    sp.C0 = C0;
    const double v = hormander_integral(pi, mu, kappa, samples[i], sp);
    r.metrics["sample_" + std::to_string(i)] = v;
    deltas.push_back(samples[i].delta);
    values.push_back(v);
    if (v >= worst) {
      worst = v;
      r.worst_point = {samples[i].s, samples[i].y[0], samples[i].y[1], samples[i].y[2], samples[i].delta};
    }
  }
  r.value = worst;
  r.fitted_constants["C"] = worst;
  const bool spread = deltas.size() >= 2 &&
                      *std::max_element(deltas.begin(), deltas.end()) >
                          *std::min_element(deltas.begin(), deltas.end());
  bool positive = std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
  if (spread && positive) {
    const auto fit = fit_loglog(deltas, values);
    r.metrics["trend_slope"] = fit.slope;
    r.metrics["trend_residual"] = fit.residual_rms;
    r.bound = spec.trend_tol;
    r.require(std::abs(fit.slope) <= spec.trend_tol, "no growth trend in delta");
  }
  r.require(std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); }),
            "all sample integrals finite");
  return r;
}

}  // namespace nlc::density
