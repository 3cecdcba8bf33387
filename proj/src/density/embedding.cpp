#include "nlc/density/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/quadrature.hpp"
#include "nlc/core/stats.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::density {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTimePanels = 48;
constexpr double kTimeFloor = 1e-10;
constexpr double kEnvelope = 1e-12;

double norm3(const std::array<double, 3>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

std::string tagged(const std::string& name, double v) {
  std::ostringstream os;
  os.precision(4);
  os << name << "=" << v;
  return os.str();
}

// f(x + z) - f(x) spectrally.
Field increment(const Field& f, const std::array<double, 3>& z) {
  auto c = forward(f);
  const auto& g = f.grid;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto xi = g.frequency(i);
    const double ph = 2.0 * std::numbers::pi * (xi[0] * z[0] + xi[1] * z[1] + xi[2] * z[2]);
    c[i] *= cplx{std::cos(ph) - 1.0, std::sin(ph)};
  }
  return inverse(g, std::move(c));
}

double sup_abs(const Field& f) { return sup_norm(f); }

}  // namespace

IntegrabilityCheck gamma_integrability(const levy::ScalingTriple& kappa, double delta, double e_small,
                                       double e_large) {
  IntegrabilityCheck c;
  auto piece = [&](double e) {
    return [&, e](double t) { return std::pow(t, delta - 1.0) * std::pow(kappa.gamma(t), -e); };
  };
  try {
    c.small_time = integrate_radial(piece(e_small), 0.0, 1.0);
  } catch (const DivergentIntegral& err) {
    c.divergent_piece = "int_0^1 t^(delta-1) gamma(t)^(-" + std::to_string(e_small) +
                        ") dt diverges (local exponent " + std::to_string(err.exponent()) + ")";
    c.small_time = kInf;
  }
  try {
    c.large_time = integrate_radial(piece(e_large), 1.0, kInf);
  } catch (const DivergentIntegral& err) {
    if (!c.divergent_piece.empty()) c.divergent_piece += "; ";
    c.divergent_piece += "int_1^inf t^(delta-1) gamma(t)^(-" + std::to_string(e_large) +
                         ") dt diverges (local exponent " + std::to_string(err.exponent()) + ")";
    c.large_time = kInf;
  }
  c.ok = c.divergent_piece.empty();
  return c;
}

IntegrabilityCheck embedding_integrability(const levy::ScalingTriple& kappa, double delta, double q,
                                           int d) {
  if (!(q >= 1.0)) throw DomainError("kernel integrability index q must be >= 1");
  const double e = d - d / q;
  return gamma_integrability(kappa, delta, e, 1.0 + e);
}

double representation_constant(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("fractional order must lie in (0, 1]");
  return delta == 1.0 ? -1.0 : -1.0 / std::tgamma(delta);
}

EmbeddingKernel embedding_kernel(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                                 double delta, const std::array<double, 3>& z, const GridSpec& grid,
                                 double q) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("fractional order must lie in (0, 1]");
  const double r = norm3(z);
  if (!(r > 0.0)) throw DomainError("embedding kernel needs z != 0");
  EmbeddingKernel out;
  out.q = q;
  out.precheck = embedding_integrability(kappa, delta, q, grid.d);
  if (!out.precheck.ok)
    throw DomainError("embedding kernel integrability precheck failed: " + out.precheck.divergent_piece);

  // The lattice of a grid with period L / |z| is |z| xi_k, where the symbol
  // of pi~_{|z|} is needed.
  const auto tilde = levy::scale_measure(pi, r, kappa);
  auto psi = spectral::symbol(tilde, GridSpec(grid.d, grid.n, grid.L / r));
  if (delta < 1.0)
    for (auto& v : psi.values) v = {v.real(), 0.0};

  double slowest = -kInf;
  for (std::size_t i = 1; i < psi.size(); ++i) slowest = std::max(slowest, psi.values[i].real());
  if (!(slowest < 0.0)) throw NumericalGuard("embedding kernel: symbol vanishes on a nonzero mode");
  const double T_max = std::max(10.0, std::log(kEnvelope) / slowest);
  auto tq = log_panels(kTimeFloor, 1.0, kTimePanels, 10);
  tq.append(log_panels(1.0, T_max, kTimePanels, 10));

  const double kd = std::pow(kappa.kappa(r), delta);
  std::vector<cplx> spec(grid.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const cplx ps = psi.values[i];
    // int_0^floor t^{delta-1} e^{psi t} dt to first order, then the panels.
    cplx T = std::pow(kTimeFloor, delta) / delta * (1.0 + ps * kTimeFloor * delta / (delta + 1.0));
    for (std::size_t k = 0; k < tq.size(); ++k)
      T += tq.w[k] * std::pow(tq.x[k], delta - 1.0) * std::exp(ps * tq.x[k]);
    const auto xi = grid.frequency(i);
    const double ph = 2.0 * std::numbers::pi * (xi[0] * z[0] + xi[1] * z[1] + xi[2] * z[2]);
    spec[i] = kd * cplx{std::cos(ph) - 1.0, std::sin(ph)} * T;
  }
  out.spectrum = spec;
  out.kernel = inverse(grid, std::move(spec));
  out.lq_norm = lp_norm(out.kernel, q);
  double integral = 0.0;
  for (const auto& v : out.kernel.values) integral += v.real();
  out.integral = integral * grid.cell_volume();
  return out;
}

CheckReport representation_check(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                                  double delta, const std::array<double, 3>& z, const Field& f,
                                  double q, double tolerance) {
  CheckReport r;
  r.lemma_id = "kl1";
  r.bound = tolerance;
  const auto& g = f.grid;
  const auto k = embedding_kernel(pi, kappa, delta, z, g, q);
  const auto frac = spectral::fractional_multiplier(pi, delta, g);
  const double c = representation_constant(delta);
  auto fc = forward(f);
  for (std::size_t i = 0; i < fc.size(); ++i) fc[i] *= c * frac.values[i] * k.spectrum[i];
  const auto rep = inverse(g, std::move(fc));
  const auto inc = increment(f, z);
  const double err = lp_distance(rep, inc, std::numeric_limits<double>::infinity());
  r.value = err;
  r.metrics["max_abs_error"] = err;
  r.metrics["increment_sup"] = sup_abs(inc);
  r.metrics["kernel_lq_norm"] = k.lq_norm;
  r.metrics["kernel_integral"] = k.integral;
  r.fitted_constants["c"] = c;
  r.require(err <= tolerance, "increment representation within tolerance");
  return r;
}

CheckReport kernel_lq_audit(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                            double delta, double q, const std::vector<double>& z_grid, int d, int n,
                            double L_rel, double max_spread) {
  CheckReport r;
  r.lemma_id = "crl1";
  std::vector<double> ratios;
  for (double zn : z_grid) {
    const GridSpec g(d, n, L_rel * zn);
    const auto k = embedding_kernel(pi, kappa, delta, {zn, 0.0, 0.0}, g, q);
    const double shape = std::pow(kappa.kappa(zn), delta) * std::pow(zn, -d + d / q);
    const double ratio = k.lq_norm / shape;
    ratios.push_back(ratio);
    r.metrics[tagged("ratio_z", zn)] = ratio;
    // Reflection z -> -z leaves the y-integral unchanged.
    const auto km = embedding_kernel(pi, kappa, delta, {-zn, 0.0, 0.0}, g, q);
    r.metrics[tagged("reflection_integral_gap_z", zn)] = std::abs(k.integral - km.integral);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  r.fitted_constants["C"] = *hi;
  r.value = *hi / *lo - 1.0;
  r.bound = max_spread;
  r.require(r.value <= max_spread, "fitted L_q constant stable over |z|");
  return r;
}

HolderReports holder_modulus_audit(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                                   const Field& f, const std::vector<double>& z_grid, double p,
                                   double delta, double trend_tol) {
  HolderReports out;
  auto& m = out.modulus;
  auto& b = out.lp_bound;
  m.lemma_id = "ccc1";
  b.lemma_id = "pro4";
  const auto& g = f.grid;
  const int d = g.d;

  const auto pre1 = gamma_integrability(kappa, 1.0, 0.0, 1.0);
  // Only the large-time piece is hypothesised here.
  if (std::isinf(pre1.large_time)) {
    m.require(false, "hypothesis int_1^inf gamma(t)^-1 dt < inf: " + pre1.divergent_piece);
  } else {
    m.metrics["gamma_tail_integral"] = pre1.large_time;
    const double Lf = sup_norm(spectral::apply_multiplier(spectral::symbol(pi, g), f));
    std::vector<double> zs, ratios;
    for (double zn : z_grid) {
      const double mod = sup_norm(increment(f, {zn, 0.0, 0.0}));
      zs.push_back(zn);
      ratios.push_back(Lf > 0.0 ? mod / (kappa.kappa(zn) * Lf) : 0.0);
      m.metrics[tagged("ratio_z", zn)] = ratios.back();
    }
    const double C = *std::max_element(ratios.begin(), ratios.end());
    m.fitted_constants["C"] = C;
    m.value = C;
    m.require(std::isfinite(C), "modulus ratio finite");
    if (C > 0.0) {
      const auto fit = fit_loglog(zs, ratios);
      m.metrics["trend_slope"] = fit.slope;
      m.require(fit.slope >= -trend_tol, "modulus ratio does not grow as |z| -> 0");
    } else {
      m.diagnostics.push_back("zero modulus (constant field)");
    }
  }

  const auto pre2 = gamma_integrability(kappa, delta, d / p, 1.0 + d / p);
  if (!pre2.ok) {
    b.require(false, "hypothesis of the L_p embedding: " + pre2.divergent_piece);
    return out;
  }
  const double Lp = lp_norm(spectral::apply_multiplier(spectral::fractional_multiplier(pi, delta, g), f), p);
  std::vector<double> zs, ratios;
  for (double zn : z_grid) {
    const double mod = sup_norm(increment(f, {zn, 0.0, 0.0}));
    const double w = kappa.kappa(zn) * std::pow(zn, -d / p);
    zs.push_back(zn);
    ratios.push_back(Lp > 0.0 ? mod / (w * Lp) : 0.0);
    b.metrics[tagged("ratio_z", zn)] = ratios.back();
  }
  const double C1 = *std::max_element(ratios.begin(), ratios.end());
  b.fitted_constants["C1"] = C1;
  b.value = C1;
  b.require(std::isfinite(C1), "L_p modulus ratio finite");
  if (C1 > 0.0) {
    const auto fit = fit_loglog(zs, ratios);
    b.metrics["trend_slope"] = fit.slope;
    b.require(fit.slope >= -trend_tol, "L_p modulus ratio does not grow as |z| -> 0");
  }
  // sup|f| <= |f|_p + C1 |L^{pi;delta} f|_p int_{|z|<=1} kappa(|z|) |z|^{-d/p} dz.
  const double sphere = d == 1 ? 2.0 : d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  const double ball = sphere * integrate_radial(
                                   [&](double rr) { return kappa.kappa(rr) * std::pow(rr, d - 1.0 - d / p); },
                                   0.0, 1.0);
  const double lhs = sup_norm(f);
  const double rhs = lp_norm(f, p) + C1 * Lp * ball;
  b.metrics["sup_lhs"] = lhs;
  b.metrics["sup_rhs"] = rhs;
  b.require(lhs <= rhs * (1.0 + 1e-12), "sup bound via the unit-ball average");
  return out;
}

}  // namespace nlc::density
