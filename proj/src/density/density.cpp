#include "nlc/density/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/levy/assumptions.hpp"

namespace nlc::density {
namespace {

double shell_max_re(const spectral::SpectralMultiplier& psi) {
  const auto& g = psi.grid;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unravel(i);
    bool shell = false;
    for (int a = 0; a < g.d; ++a) shell = shell || idx[a] == g.n / 2;
    if (shell) worst = std::max(worst, psi.values[i].real());
  }
  return worst;
}

double l1(const Field& f) { return lp_norm(f, 1.0); }

}  // namespace

double alias_level(const spectral::SpectralMultiplier& psi, double t) {
  return std::exp(shell_max_re(psi) * t);
}

double alias_time(const spectral::SpectralMultiplier& psi) {
  const double re = shell_max_re(psi);
  if (!(re < 0.0)) return std::numeric_limits<double>::infinity();
  return std::log(kAliasTolerance) / re;
}

Field density_unguarded(const spectral::SpectralMultiplier& psi, double t) {
  std::vector<cplx> c(psi.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::exp(psi.values[i] * t);
  return inverse(psi.grid, std::move(c));
}

Field density_from_symbol(const spectral::SpectralMultiplier& psi, double t) {
  if (!(t > 0.0)) throw DomainError("density needs t > 0");
  const double level = alias_level(psi, t);
  if (level > kAliasTolerance) {
    std::ostringstream os;
    os << "aliasing guard: exp(Re psi(xi_Nyq) t) = " << level << " > " << kAliasTolerance
       << " at t = " << t << "; increase n or decrease L (need t >= " << alias_time(psi) << ")";
    throw NumericalGuard(os.str());
  }
  return density_unguarded(psi, t);
}

Field density(const levy::LevyMeasure& mu, double t, const GridSpec& grid) {
  return density_from_symbol(spectral::symbol(mu, grid), t);
}

GridSpec density_grid(const levy::ScalingTriple& kappa, double t, int d, int n, double L_min) {
  return GridSpec(d, n, std::max(L_min, 32.0 * kappa.a(t)));
}

GridSpec resolve_grid(const levy::LevyMeasure& mu, double t, int d, int n0, double L) {
  const int cap = d == 1 ? (1 << 20) : d == 2 ? (1 << 10) : (1 << 7);
  for (int n = n0; n <= cap; n *= 2) {
    GridSpec g(d, n, L);
    if (alias_level(spectral::symbol(mu, g), t) <= kAliasTolerance) return g;
  }
  throw NumericalGuard("aliasing guard cannot be met at t = " + std::to_string(t) +
                       " within the grid size cap; decrease L");
}

CheckReport density_scaling_check(const levy::LevyMeasure& mu, const levy::ScalingTriple& kappa,
                                  const std::vector<double>& t_grid, int d, int n,
                                  double tolerance) {
  CheckReport r;
  r.lemma_id = "al1";
  r.bound = tolerance;
  double worst = 0.0;
  for (double t : t_grid) {
    const double a = kappa.a(t);
    const auto tilde = levy::scale_measure(mu, a, kappa);
    const double L = density_grid(kappa, t, d, n).L;
    // Both sides share the point count, so refine until both pass the guard.
    GridSpec g = resolve_grid(mu, t, d, n, L);
    GridSpec gs(d, g.n, L / a);
    while (alias_level(spectral::symbol(tilde, gs), 1.0) > kAliasTolerance) {
      g = resolve_grid(mu, t, d, 2 * g.n, L);
      gs = GridSpec(d, g.n, L / a);
    }
    const auto lhs = density(mu, t, g);
    const auto unit = density(tilde, 1.0, gs);
    Field diff(g);
    const double jac = std::pow(a, -d);
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] = lhs[i] - jac * unit[i];
    const double rel = l1(diff) / l1(lhs);
    std::ostringstream key;
    key.precision(4);
    key << "rel_l1_t=" << t;
    r.metrics[key.str()] = rel;
    if (rel >= worst) {
      worst = rel;
      r.worst_point = {t};
    }
  }
  r.value = worst;
  r.require(worst <= tolerance, "density scaling identity within tolerance");
  return r;
}

DensityDiagnostics density_diagnostics(const spectral::SpectralMultiplier& psi, double t, double s) {
  DensityDiagnostics out;
  const auto p = density_from_symbol(psi, t);
  const double vol = p.grid.cell_volume();
  double mass = 0.0, lo = std::numeric_limits<double>::infinity();
  for (const auto& v : p.values) {
    mass += v.real() * vol;
    lo = std::min(lo, v.real());
  }
  out.mass = mass;
  out.min_value = lo;
  // p(t) * p(s) through the product of transforms of the sampled densities.
  const auto ps = density_from_symbol(psi, s);
  auto ct = forward(p);
  const auto cs = forward(ps);
  for (std::size_t i = 0; i < ct.size(); ++i) ct[i] *= cs[i];
  const auto conv = inverse(p.grid, std::move(ct));
  const auto pts = density_from_symbol(psi, t + s);
  out.semigroup_defect = lp_distance(pts, conv, 1.0);
  return out;
}

}  // namespace nlc::density
