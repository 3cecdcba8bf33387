#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "nlc/core/error.hpp"
#include "nlc/levy/assumptions.hpp"
#include "nlc/levy/bernstein.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace nlc;
using namespace nlc::levy;

TEST_CASE("stable measures are self-similar under power scaling", "[scale]") {
  const auto pi = LevyMeasure::stable(1, 0.6);
  const auto kappa = ScalingTriple::power(0.6);
  for (double R : {0.01, 0.3, 1.0, 7.0, 250.0}) {
    const auto t = scale_measure(pi, R, kappa);
    for (double r : {1e-4, 0.2, 1.0, 30.0}) CHECK(t.density(r, 0) == Approx(pi.density(r, 0)).epsilon(1e-12));
  }
  const auto id = scale_measure(LevyMeasure::stable(2, 1.3, 2.0), 1.0, ScalingTriple::power(1.3));
  CHECK(id.density(0.5, 1) == Approx(LevyMeasure::stable(2, 1.3, 2.0).density(0.5, 1)));
}

TEST_CASE("rescaled Bernstein moments are R-independent", "[scale][bernstein]") {
  const auto model = bernstein_measure(power_sum({0.5}, {1.0}), 1);
  std::vector<double> m;
  for (double R : log_grid(1e-2, 1e2, 9)) {
    const auto t = scale_measure(model.measure, R, model.scaling);
    m.push_back(t.radial_moment([](double r) { return std::pow(r, 1.5); }, 0.0, 1.0));
  }
  const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
  CHECK(*hi / *lo - 1.0 < 0.01);
}

TEST_CASE("B integral for stable 1/2 matches the closed form", "[B]") {
  const auto pi = LevyMeasure::stable(1, 0.5);
  AssumptionParams p;
  p.alpha1 = 1.0;
  p.alpha2 = 0.25;
  p.N0 = 13.0;
  const auto rep = check_assumption_B(pi, ScalingTriple::power(0.5), p, log_grid(1e-2, 1e2, 9));
  CHECK(rep.passed());
  CHECK(rep.value == Approx(oracle::kStableHalfB).epsilon(1e-8));
  CHECK(rep.metrics.at("relative_spread") <= 1e-8);
}

TEST_CASE("B fails at the boundary alpha1 = sigma", "[B]") {
  AssumptionParams p;
  p.alpha1 = 0.5;
  p.alpha2 = 0.25;
  const auto pi = LevyMeasure::stable(1, 0.5);
  bool failed = false;
  try {
    failed = !check_assumption_B(pi, ScalingTriple::power(0.5), p, {1.0}).passed();
  } catch (const DomainError&) {
    failed = true;
  }
  CHECK(failed);
}

TEST_CASE("B passes for the shifted-power Bernstein example", "[B][bernstein]") {
  const auto model = bernstein_measure(shifted_power(0.7, 0.5), 1);
  AssumptionParams p;
  p.alpha1 = 1.2;
  p.alpha2 = 0.5;
  p.N0 = 1e3;
  const auto rep = check_assumption_B(model.measure, model.scaling, p, log_grid(1e-2, 1e2, 9));
  CHECK(rep.passed());
  CHECK(model.audit.delta1 == Approx(0.35).margin(0.02));
  CHECK(model.audit.delta2 == Approx(0.5).margin(0.02));
}

TEST_CASE("A0 nondegeneracy of truncated stable 1/2", "[A0]") {
  const auto mu0 = LevyMeasure::stable(1, 0.5).truncated(1.0);
  AssumptionParams p;
  p.alpha1 = 1.0;
  p.alpha2 = 0.25;
  p.c1 = 1.0;
  const auto rep = check_assumption_A0(mu0, p);
  CHECK(rep.metrics.at("nondegeneracy") == Approx(oracle::kTruncatedHalfSecondMoment).epsilon(1e-6));
  CHECK(rep.metrics.at("second_moment") == Approx(oracle::kTruncatedHalfSecondMoment).epsilon(1e-6));
  CHECK(rep.passed());
}

TEST_CASE("A0 fails for a single direction in d = 2", "[A0]") {
  const auto mu0 = LevyMeasure::stable(2, 0.5, 1.0, {AngularAtom{{1.0, 0.0, 0.0}, 1.0}});
  AssumptionParams p;
  p.alpha1 = 1.0;
  p.alpha2 = 0.25;
  const auto rep = check_assumption_A0(mu0, p);
  CHECK(rep.metrics.at("nondegeneracy") == Approx(0.0).margin(1e-12));
  CHECK_FALSE(rep.passed());
}

TEST_CASE("A0 fails for the zero measure", "[A0]") {
  const auto mu0 = LevyMeasure::stable(1, 0.5).with_coefficient(0.0);
  AssumptionParams p;
  p.alpha1 = 1.0;
  p.alpha2 = 0.25;
  const auto rep = check_assumption_A0(mu0, p);
  CHECK(rep.metrics.at("second_moment") == 0.0);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("D margin is 1 - c for scaled copies", "[D]") {
  const auto pi = LevyMeasure::stable(1, 0.5);
  const auto kappa = ScalingTriple::power(0.5);
  const auto grid = log_grid(1e-2, 1e2, 5);
  const auto pass = check_assumption_D(pi, pi.truncated(1.0).with_coefficient(0.4), kappa, grid);
  CHECK(pass.passed());
  CHECK(pass.value == Approx(0.6).epsilon(1e-12));
  const auto fail = check_assumption_D(pi, pi.truncated(1.0).with_coefficient(1.5), kappa, grid);
  CHECK_FALSE(fail.passed());
  CHECK(fail.value == Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("order estimates", "[order]") {
  const auto e = estimate_order(LevyMeasure::stable(1, 0.7));
  CHECK(e.sigma == Approx(0.7).margin(1e-3));
  CHECK(e.power_like);
  const auto model = bernstein_measure(shifted_power(0.7, 0.5), 1);
  const auto b = estimate_order(model.measure);
  CHECK(b.sigma >= 2.0 * model.audit.delta1 - 1e-3);
  CHECK(b.sigma <= 2.0 * model.audit.delta2 + 1e-3);
}

TEST_CASE("Bernstein r^(1/2) reproduces the Cauchy kernel", "[bernstein]") {
  const auto model = bernstein_measure(power_sum({0.5}, {1.0}), 1);
  for (double r : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
    // j(r) = 1 / (pi r^2); the two atoms split the line.
    CHECK(model.measure.density(r, 0) == Approx(1.0 / (std::numbers::pi * r * r)).epsilon(1e-3));
  }
  // j(r) / (phi(r^-2) r^-1) = 1 / pi exactly, so the sandwich constant is pi.
  CHECK(model.audit.N_kernel == Approx(std::numbers::pi).epsilon(1e-3));
  for (double xi : {0.05, 0.5, 3.0}) {
    const auto v = model.measure.symbol({xi, 0.0, 0.0});
    CHECK(v.real() == Approx(-2.0 * std::numbers::pi * xi).epsilon(1e-3));
  }
}

TEST_CASE("power-log Bernstein exponents", "[bernstein]") {
  const auto a = audit_bernstein_function(*power_log(0.4, 0.3));
  CHECK(a.delta1 >= 0.38);
  CHECK(a.delta1 <= 0.4 + 1e-9);
  CHECK(a.delta2 >= 0.68);
  CHECK(a.delta2 <= 0.72);
}

TEST_CASE("atomic subordinators are rejected", "[bernstein]") {
  CHECK_THROWS_AS(bernstein_measure_from_atoms({0.5}, {1.0}, 1, "point"), DomainError);
}

TEST_CASE("power scaling triple and its inverses", "[scaling]") {
  const auto s = ScalingTriple::power(0.5, 2.0);
  CHECK(s.kappa(4.0) == Approx(4.0));
  CHECK(s.l(0.25) == Approx(0.5));
  CHECK(s.a(4.0) == Approx(4.0));
  CHECK(s.kappa(s.a(3.0)) >= 3.0 * (1.0 - 1e-12));
  CHECK(s.l(s.gamma(0.3)) >= 0.3 * (1.0 - 1e-12));
  const auto rep = audit_scaling(s);
  CHECK(rep.passed());
}

TEST_CASE("tabulated scaling matches the power case", "[scaling]") {
  const auto t = ScalingTriple::tabulated([](double r) { return std::pow(r, 1.5); },
                                          [](double e) { return std::pow(e, 1.5); }, "p15");
  for (double x : {1e-3, 0.5, 2.0, 40.0}) {
    CHECK(t.a(x) == Approx(std::pow(x, 1.0 / 1.5)).epsilon(1e-3));
    CHECK(t.gamma(x) == Approx(std::pow(x, 1.0 / 1.5)).epsilon(1e-3));
  }
}

TEST_CASE("regime constraints on alpha1 and alpha2", "[params]") {
  AssumptionParams p;
  p.alpha1 = 1.5;
  p.alpha2 = 0.5;
  CHECK_NOTHROW(p.validate(1.0));
  CHECK_THROWS_AS(p.validate(0.5), DomainError);
}

TEST_CASE("measure construction guards", "[measure]") {
  CHECK_THROWS_AS(LevyMeasure::stable(1, 2.0), DomainError);
  CHECK_THROWS_AS(LevyMeasure::stable(4, 1.0), DomainError);
  CHECK_THROWS_AS(LevyMeasure::stable(2, 1.0, 1.0, {AngularAtom{{1.0, 0.0, 0.0}, 1.0}}), DomainError);
  const auto pi = LevyMeasure::stable(1, 1.5);
  CHECK(pi.tail_mass(1.0) == Approx(2.0 / 1.5));
  CHECK(pi.angular_symmetric());
}
