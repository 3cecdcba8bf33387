#include "nlc/levy/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlc/core/error.hpp"
#include "nlc/core/quadrature.hpp"
#include "nlc/core/stats.hpp"

namespace nlc::levy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double spread_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi == 0.0 ? 0.0 : (*hi - *lo) / std::abs(*hi);
}

std::vector<Vec> unit_directions(int d) {
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs.push_back({1.0, 0.0, 0.0});
  } else if (d == 2) {
    for (int k = 0; k < 360; ++k) {
      const double th = std::numbers::pi * k / 360.0;
      dirs.push_back({std::cos(th), std::sin(th), 0.0});
    }
  } else {
    const int n = 2000;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double rr = std::sqrt(1.0 - z * z);
      dirs.push_back({rr * std::cos(golden * k), rr * std::sin(golden * k), z});
    }
  }
  return dirs;
}

void require_same_atoms(const LevyMeasure& a, const LevyMeasure& b) {
  const auto& x = a.atoms();
  const auto& y = b.atoms();
  bool same = x.size() == y.size();
  for (std::size_t i = 0; same && i < x.size(); ++i)
    for (int k = 0; k < 3; ++k) same = same && std::abs(x[i].direction[k] - y[i].direction[k]) < 1e-12;
  if (!same)
    throw DomainError("domination is decided per angular atom: project both measures onto a common atom set");
}

}  // namespace

void AssumptionParams::validate(double sigma) const {
  auto in = [](double v, double lo, double hi, bool lo_closed, bool hi_closed) {
    return (lo_closed ? v >= lo : v > lo) && (hi_closed ? v <= hi : v < hi);
  };
  bool ok;
  if (sigma < 1.0) ok = in(alpha1, 0, 1, false, true) && in(alpha2, 0, 1, false, true);
  else if (sigma > 1.0) ok = in(alpha1, 1, 2, false, true) && in(alpha2, 1, 2, false, true);
  else ok = in(alpha1, 1, 2, false, true) && in(alpha2, 0, 1, true, false);
  if (!ok) throw DomainError("alpha1/alpha2 violate the regime constraint for this order");
}

LevyMeasure scale_measure(const LevyMeasure& pi, double R, const ScalingTriple& kappa) {
  if (!(R > 0.0)) throw DomainError("scale_measure needs R > 0");
  return pi.rescaled(R, kappa.kappa(R));
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) throw DomainError("log grid needs 0 < lo <= hi");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = points == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  return g;
}

CheckReport check_assumption_B(const LevyMeasure& pi, const ScalingTriple& kappa,
                               const AssumptionParams& params, const std::vector<double>& R_grid) {
  if (R_grid.empty()) throw DomainError("R grid must be nonempty");
  CheckReport rep;
  rep.lemma_id = "B";
  rep.bound = params.N0;
  std::vector<double> values;
  double worst = -kInf, worst_R = R_grid.front();
  for (double R : R_grid) {
    if (!(R > 0.0)) throw DomainError("R grid must be positive");
    const auto m = scale_measure(pi, R, kappa);
    double v;
    try {
      const double a1 = params.alpha1, a2 = params.alpha2;
      v = m.radial_moment([a1](double r) { return std::pow(r, a1); }, 0.0, 1.0) +
          m.radial_moment([a2](double r) { return std::pow(r, a2); }, 1.0, kInf);
    } catch (const DivergentIntegral& e) {
      rep.diagnostics.push_back("R=" + std::to_string(R) + ": " + e.what());
      rep.require(false, "moment integrals converge");
      v = kInf;
    }
    values.push_back(v);
    if (v > worst) {
      worst = v;
      worst_R = R;
    }
  }
  rep.value = worst;
  rep.worst_point = {worst_R};
  rep.metrics["relative_spread"] = std::isfinite(worst) ? spread_of(values) : kInf;
  rep.metrics["min_value"] = *std::min_element(values.begin(), values.end());
  rep.require(worst <= params.N0, "sup over R of the B integrals <= N0");
  return rep;
}

CheckReport check_assumption_A0(const LevyMeasure& mu0_in, const AssumptionParams& params) {
  CheckReport rep;
  rep.lemma_id = "A0";
  const LevyMeasure mu0 = mu0_in.truncated(1.0);
  const int d = mu0.dim();
  const double sigma = mu0.sigma();

  const double m2 = mu0.radial_moment([](double r) { return r * r; }, 0.0, 1.0);

  // Directional nondegeneracy.
  std::vector<double> second(mu0.atoms().size());
  for (std::size_t i = 0; i < second.size(); ++i)
    second[i] = mu0.atom_moment(i, [](double r) { return r * r; }, 0.0, 1.0);
  double nondeg = kInf;
  Vec worst_dir{};
  for (const auto& xi : unit_directions(d)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < second.size(); ++i) {
      const auto& w = mu0.atoms()[i].direction;
      const double p = xi[0] * w[0] + xi[1] * w[1] + xi[2] * w[2];
      acc += mu0.atoms()[i].weight * p * p * second[i];
    }
    if (acc < nondeg) {
      nondeg = acc;
      worst_dir = xi;
    }
  }

  // Weighted Fourier integral in polar coordinates; directions from the
  // sphere design, radial log panels until the integrand is negligible.
  auto a0_lambda = [&](double rho) {
    if (sigma < 1.0) return 0.0;
    return mu0.radial_moment([&](double r) { return compensator(sigma, r) * r * std::min(rho * r, 1.0); },
                             0.0, 1.0);
  };
  double fourier = 0.0;
  bool truncated_tail = false;
  if (m2 > 0.0) {
    for (const auto& dir : sphere_design(d)) {
      auto integrand = [&](double rho) {
        const Vec xi{rho * dir.direction[0], rho * dir.direction[1], rho * dir.direction[2]};
        const double psi0 = -mu0.symbol(xi).real();
        return std::pow(rho, d - 1 + 4) * std::pow(1.0 + a0_lambda(rho), d + 3) * std::exp(-psi0);
      };
      double hi = 1.0, peak = 0.0;
      for (int k = 0; k < 40; ++k) {
        const double v = integrand(hi) * hi;
        peak = std::max(peak, v);
        if (v < 1e-16 * peak && k > 2) break;
        hi *= 2.0;
        if (k == 39) truncated_tail = true;
      }
      const auto q = log_panels_per_decade(1e-6, hi, 8.0, 10);
      fourier += dir.weight * integrate(q, integrand);
    }
  }
  const double total = m2 + fourier;
  rep.value = total;
  rep.bound = params.n0;
  rep.worst_point.assign(worst_dir.begin(), worst_dir.begin() + d);
  rep.metrics = {{"second_moment", m2}, {"fourier_integral", fourier}, {"nondegeneracy", nondeg}};
  if (truncated_tail) rep.diagnostics.push_back("Fourier integrand not negligible at the largest radius");
  rep.require(std::isfinite(total) && total <= params.n0, "moment + Fourier integral <= n0");
  rep.require(nondeg > 0.0 && nondeg >= params.c1, "directional nondegeneracy >= c1");
  return rep;
}

CheckReport check_assumption_D(const LevyMeasure& pi, const LevyMeasure& mu0, const ScalingTriple& kappa,
                               const std::vector<double>& R_grid) {
  require_same_atoms(pi, mu0);
  CheckReport rep;
  rep.lemma_id = "D";
  double margin = kInf;
  std::vector<double> worst{};
  const auto r_grid = log_grid(1e-8, 1.0, 65);
  for (double R : R_grid) {
    const auto m = scale_measure(pi, R, kappa);
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
      const double sp = m.atoms()[i].weight, sm = mu0.atoms()[i].weight;
      for (double r : r_grid) {
        const double lower = sm * mu0.density(r, i);
        const double upper = sp * m.density(r, i);
        if (lower <= 0.0) continue;
        const double mgn = upper > 0.0 ? 1.0 - lower / upper : -kInf;
        if (mgn < margin) {
          margin = mgn;
          worst = {R, r, static_cast<double>(i)};
        }
      }
    }
  }
  if (!std::isfinite(margin) && margin > 0.0) margin = 1.0;  // mu0 = 0
  rep.value = margin;
  rep.bound = 0.0;
  rep.worst_point = worst;
  rep.require(margin >= 0.0, "kappa(R) pi_R dominates mu0 on the unit ball");
  return rep;
}

double fit_lower_measure_constant(const LevyMeasure& pi, const ScalingTriple& kappa, double exponent,
                                  const std::vector<double>& R_grid) {
  double c = kInf;
  const auto r_grid = log_grid(1e-8, 1.0, 65);
  for (double R : R_grid) {
    const auto m = scale_measure(pi, R, kappa);
    for (std::size_t i = 0; i < m.atoms().size(); ++i)
      for (double r : r_grid) c = std::min(c, m.density(r, i) / std::pow(r, -1.0 - exponent));
  }
  return c;
}

OrderEstimate estimate_order(const LevyMeasure& pi) {
  // Shell masses int_{eps<|y|<=2 eps} dpi behave like eps^{-sigma}.
  std::vector<double> eps, mass;
  for (double e = 1e-9; e <= 1e-5 * 1.0001; e *= std::sqrt(10.0)) {
    const double m = pi.radial_moment([](double) { return 1.0; }, e, 2.0 * e);
    eps.push_back(e);
    mass.push_back(m);
  }
  OrderEstimate out;
  if (std::any_of(mass.begin(), mass.end(), [](double m) { return !(m > 0.0); })) {
    out.sigma = 0.0;
    return out;
  }
  const auto fit = fit_loglog(eps, mass);
  std::vector<double> local;
  for (std::size_t i = 1; i < eps.size(); ++i) local.push_back(std::log(mass[i] / mass[i - 1]) / std::log(eps[i] / eps[i - 1]));
  const auto [lo, hi] = std::minmax_element(local.begin(), local.end());
  out.sigma = std::max(0.0, -fit.slope);
  out.spread = *hi - *lo;
  out.power_like = out.spread < 0.05;
  return out;
}

CheckReport audit_scaling(const ScalingTriple& s, double N, int points) {
  CheckReport rep;
  rep.lemma_id = "scaling";
  const auto grid = log_grid(1e-4, 1e4, points);
  const double tol = 1e-12;

  double worst_factor = -kInf;
  std::vector<double> worst_pt;
  for (double eps : grid)
    for (double r : grid) {
      const double excess = s.kappa(eps * r) / (s.l(eps) * s.kappa(r)) - 1.0;
      if (excess > worst_factor) {
        worst_factor = excess;
        worst_pt = {eps, r};
      }
    }
  rep.metrics["factor_excess"] = worst_factor;
  rep.worst_point = worst_pt;
  rep.require(worst_factor <= tol, "kappa(eps r) <= l(eps) kappa(r)");

  const double k1 = s.kappa(1.0);
  rep.require(s.kappa(1e-8) < 1e-3 * k1 && s.kappa(1e8) > 1e3 * k1, "kappa(0+) -> 0 and kappa(inf) -> inf");

  const double theta0 = std::log(s.l(N)) / std::log(N);
  const double theta1 = -std::log(s.l(1.0 / N)) / std::log(N);
  double cbar = 1.0;
  for (double r : grid) {
    const double up = std::max(std::pow(r, theta0), std::pow(r, theta1));
    const double dn = std::min(std::pow(r, theta0), std::pow(r, theta1));
    cbar = std::max({cbar, s.kappa(r) / (k1 * up), k1 * dn / s.kappa(r)});
  }
  rep.fitted_constants = {{"theta0", theta0}, {"theta1", theta1}, {"c_bar", cbar}};
  rep.require(theta1 <= theta0 + tol, "theta1 <= theta0");
  rep.require(std::isfinite(cbar), "finite power-bound constant");

  double inv_err = 0.0, ll2_err = 0.0;
  for (double r : grid) {
    try {
      const double t = s.kappa(r);
      inv_err = std::max(inv_err, 1.0 - s.kappa(s.a(t)) / t);
      inv_err = std::max(inv_err, s.a(t) / r - 1.0);
      inv_err = std::max(inv_err, 1.0 - s.l(s.gamma(r)) / r);
      for (double eps : grid) {
        const double lhs = s.a(eps * t), rhs = s.a(t) * s.gamma(eps);
        ll2_err = std::max(ll2_err, 1.0 - lhs / rhs);
      }
    } catch (const NumericalGuard&) {
      continue;
    }
  }
  rep.metrics["inverse_defect"] = inv_err;
  rep.metrics["ll2_defect"] = ll2_err;
  rep.require(inv_err <= 1e-10, "kappa(a(t)) >= t, a(kappa(r)) <= r, l(gamma(t)) >= t");
  rep.require(ll2_err <= 1e-10, "a(eps r) >= a(r) gamma(eps)");

  // A^{s'} / kappa(A) decreases to 0 along A -> 0 for s' above the small-r slope.
  const double slope0 = std::log(s.kappa(1e-6) / s.kappa(1e-8)) / std::log(100.0);
  const double sp = slope0 + 0.1;
  bool monotone = true;
  double prev = kInf;
  for (double A = 1e-1; A >= 1e-8; A /= 10.0) {
    const double v = std::pow(A, sp) / s.kappa(A);
    monotone = monotone && v < prev;
    prev = v;
  }
  rep.metrics["small_r_slope"] = slope0;
  rep.require(monotone, "A^{s'}/kappa(A) decreases as A -> 0");
  rep.value = worst_factor;
  return rep;
}

}  // namespace nlc::levy
