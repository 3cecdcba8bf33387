#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/stats.hpp"
#include "nlc/density/density.hpp"
#include "nlc/density/embedding.hpp"
#include "nlc/density/hormander.hpp"
#include "nlc/density/kernel_audits.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/levy/bernstein.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/spaces/corpus.hpp"
#include "nlc/symbol/symbol.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace nlc;
using levy::LevyMeasure;
using levy::ScalingTriple;

namespace {

double l1(const Field& f) { return lp_norm(f, 1.0); }

double tail_l1(const Field& f, double r) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = f.grid.point(i);
    if (std::hypot(x[0], x[1], x[2]) > r) acc += std::abs(f[i]);
  }
  return acc * f.grid.cell_volume();
}

}  // namespace

TEST_CASE("Cauchy density matches the closed form", "[density][oracle]") {
  const auto m = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  for (double t : {0.5, 1.0, 2.0}) {
    const auto g = density::density_grid(kappa, t, 1, 1024);
    const auto p = density::density(m, t, g);
    double err = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double want = oracle::periodic_cauchy_density(t, g.point(i)[0], g.L);
      err = std::max(err, std::abs(p[i].real() - want));
      peak = std::max(peak, want);
    }
    CHECK(err / peak <= 1e-4);
    const auto dg = density::density_diagnostics(spectral::symbol(m, g), t, t);
    CHECK(dg.mass == Approx(1.0).margin(1e-8));
    CHECK(dg.min_value >= -1e-8);
    CHECK(dg.semigroup_defect <= 1e-9);
  }
}

TEST_CASE("aliasing guard refuses coarse grids", "[density]") {
  const auto m = LevyMeasure::stable(1, 1.0);
  const GridSpec coarse(1, 16, 16.0);
  CHECK_THROWS_AS(density::density(m, 0.1, coarse), NumericalGuard);
  CHECK_THROWS_AS(density::density(m, 0.0, coarse), DomainError);
  const auto psi = spectral::symbol(m, coarse);
  CHECK(density::alias_level(psi, density::alias_time(psi)) <= density::kAliasTolerance * (1.0 + 1e-9));
  const auto g = density::resolve_grid(m, 0.1, 1, 16, 16.0);
  CHECK(g.n > 16);
  CHECK(density::alias_level(spectral::symbol(m, g), 0.1) <= density::kAliasTolerance);
}

TEST_CASE("density scaling identity", "[density][scaling]") {
  const auto stable = LevyMeasure::stable(1, 1.5);
  const auto r = density::density_scaling_check(stable, ScalingTriple::power(1.5), {0.3, 1.0, 4.0}, 1, 256, 1e-8);
  CHECK(r.passed());
  const auto one = density::density_scaling_check(stable, ScalingTriple::power(1.5), {1.0}, 1, 256, 1e-14);
  CHECK(one.value <= 1e-14);

  const auto model = levy::bernstein_measure(levy::power_sum({0.5}, {1.0}), 1);
  const auto b = density::density_scaling_check(model.measure, model.scaling, {0.1, 1.0, 10.0}, 1, 256, 1e-4);
  CHECK(b.passed());
}

TEST_CASE("operator kernel scales with t and a(t)", "[kernel]") {
  const auto m = LevyMeasure::stable(1, 1.0);
  // Period proportional to a(t) = t makes the discrete problems exact rescalings.
  std::vector<double> ts{0.5, 1.0, 2.0}, I0, I1;
  for (double t : ts) {
    const GridSpec g(1, 2048, 256.0 * t);
    const auto psi = spectral::symbol(m, g);
    I0.push_back(l1(density::operator_kernel(psi, psi, t, {0, 0, 0})));
    I1.push_back(l1(density::operator_kernel(psi, psi, t, {1, 0, 0})));
  }
  const auto f0 = fit_loglog(ts, I0);
  CHECK(f0.slope == Approx(-1.0).margin(0.02));
  // |k| = 1 adds a factor a(t)^-1 = t^-1.
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK((I1[i] / I0[i]) * ts[i] == Approx(I1[1] / I0[1]).epsilon(0.2));

  const GridSpec g(1, 2048, 256.0);
  const auto psi = spectral::symbol(m, g);
  const auto K = density::operator_kernel(psi, psi, 1.0, {0, 0, 0});
  double prev = tail_l1(K, 1.0);
  for (double c : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double v = tail_l1(K, c);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("Hormander integrals", "[hormander]") {
  const auto m = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  density::HormanderSpec spec;
  spec.n = 1024;
  spec.L = 64.0;
  CHECK(density::default_C0(kappa) > 3.0);
  CHECK(density::hormander_integral(m, m, kappa, {0.0, {0.0, 0.0, 0.0}, 0.1}, spec) == 0.0);

  const auto sample = density::extremal_samples(kappa, 1, 0.1, 0.1, 1).front();
  CHECK(sample.s == Approx(0.1));
  const double free = density::hormander_integral(m, m, kappa, sample, spec);
  spec.lambda = 10.0;
  const double damped = density::hormander_integral(m, m, kappa, sample, spec);
  spec.lambda = 40.0;
  const double heavy = density::hormander_integral(m, m, kappa, sample, spec);
  CHECK(free > 0.0);
  CHECK(damped < free);
  CHECK(heavy < damped);
  CHECK_THROWS_AS(density::hormander_integral(m, m, kappa, {0.5, {0.0, 0.0, 0.0}, 0.1}, spec), DomainError);
}

TEST_CASE("embedding kernel precheck and symmetry", "[embedding]") {
  const auto pi = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  const GridSpec g(1, 256, 16.0);
  CHECK(density::embedding_integrability(kappa, 1.0, 2.0, 1).ok);
  const auto bad = density::embedding_integrability(kappa, 0.5, 2.0, 1);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.divergent_piece.empty());
  CHECK_THROWS_AS(density::embedding_kernel(pi, kappa, 0.5, {0.3, 0.0, 0.0}, g, 2.0), DomainError);
  CHECK_THROWS_AS(density::embedding_kernel(pi, kappa, 1.0, {0.0, 0.0, 0.0}, g, 2.0), DomainError);

  const auto kp = density::embedding_kernel(pi, kappa, 1.0, {0.3, 0.0, 0.0}, g, 2.0);
  const auto km = density::embedding_kernel(pi, kappa, 1.0, {-0.3, 0.0, 0.0}, g, 2.0);
  CHECK(std::abs(kp.integral - km.integral) <= 1e-10);
  // Symmetric densities: k(y, -z) = k(-y, z), i.e. K(xi, -z) = K(-xi, z). The
  // Nyquist mode is its own reflection on an even lattice and is skipped.
  double gap = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i == g.size() / 2) continue;
    gap = std::max(gap, std::abs(km.spectrum[i] - kp.spectrum[(g.n - i) % g.n]));
    scale = std::max(scale, std::abs(kp.spectrum[i]));
  }
  CHECK(gap <= 1e-12 * scale);
  CHECK(kp.lq_norm > 0.0);
}

TEST_CASE("increment representation", "[embedding]") {
  const auto pi = LevyMeasure::stable(1, 1.0);
  const auto kappa = ScalingTriple::power(1.0);
  const GridSpec g(1, 256, 16.0);
  const auto f = spaces::band_limited_member(g, {}, 0);
  CHECK(density::representation_constant(1.0) == -1.0);
  CHECK(density::representation_constant(0.5) == Approx(-1.0 / std::sqrt(std::numbers::pi)));
  for (double z : {0.1, 0.7}) {
    CHECK(density::representation_check(pi, kappa, 1.0, {z, 0.0, 0.0}, f, 2.0).passed());
    CHECK(density::representation_check(pi, kappa, 0.5, {z, 0.0, 0.0}, f, 1.5).passed());
  }
}

TEST_CASE("Holder modulus audit", "[holder]") {
  const auto pi = LevyMeasure::stable(1, 0.5);
  const auto kappa = ScalingTriple::power(0.5);
  const GridSpec g(1, 256, 16.0);
  const auto zs = levy::log_grid(1e-3, 1.0, 7);

  Field c(g);
  for (auto& v : c.values) v = 1.5;
  const auto zero = density::holder_modulus_audit(pi, kappa, c, zs, 4.0, 1.0);
  CHECK(zero.modulus.value == 0.0);

  Field m(g);
  for (std::size_t i = 0; i < g.size(); ++i) m[i] = std::cos(2.0 * std::numbers::pi * 0.5 * g.point(i)[0]);
  const auto one = density::holder_modulus_audit(pi, kappa, m, zs, 4.0, 1.0);
  CHECK(one.modulus.passed());
  CHECK(one.lp_bound.passed());
  Field twice = m;
  for (auto& v : twice.values) v *= 2.0;
  const auto two = density::holder_modulus_audit(pi, kappa, twice, zs, 4.0, 1.0);
  CHECK(two.modulus.value == Approx(one.modulus.value).epsilon(1e-12));
  CHECK(two.lp_bound.value == Approx(one.lp_bound.value).epsilon(1e-12));
}
