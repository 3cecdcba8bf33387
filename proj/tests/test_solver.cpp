#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/solver/apriori.hpp"
#include "nlc/solver/cauchy.hpp"
#include "nlc/spaces/corpus.hpp"
#include "nlc/spaces/norms.hpp"
#include "nlc/symbol/symbol.hpp"

using Catch::Approx;
using namespace nlc;
using namespace nlc::solver;
using levy::LevyMeasure;
using levy::ScalingTriple;

namespace {

constexpr double kPi = std::numbers::pi;

Field mode(const GridSpec& g, int k) {
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::cos(2.0 * kPi * k / g.L * g.point(i)[0]);
  return f;
}

double max_diff(const Field& a, const Field& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

CauchyProblem cauchy(const Field& g, double lambda, double T) {
  CauchyProblem pb(LevyMeasure::stable(1, 1.0), LevyMeasure::stable(1, 1.0), ScalingTriple::power(1.0));
  pb.g = g;
  pb.lambda = lambda;
  pb.T = T;
  return pb;
}

FieldSeries constant_series(const Field& f, double T, int steps) {
  return {f.grid, T, std::vector<Field>(steps + 1, f)};
}

}  // namespace

TEST_CASE("phi functions and rho_lambda", "[solver]") {
  for (cplx z : {cplx{1e-6, 0.0}, cplx{0.3, -0.2}, cplx{-2.0, 0.0}, cplx{-40.0, 3.0}}) {
    const cplx e = std::exp(z);
    CHECK(std::abs(phi1(z) - (std::abs(z) > 1e-3 ? (e - 1.0) / z : cplx{1.0} + z / 2.0)) <= 1e-12);
    if (std::abs(z) > 1e-2) CHECK(std::abs(phi2(z) - (e - 1.0 - z) / (z * z)) <= 1e-10);
  }
  CHECK(phi1(0.0) == cplx{1.0, 0.0});
  CHECK(phi2(0.0) == cplx{0.5, 0.0});
  CHECK(rho_lambda(0.0, 3.0) == 3.0);
  CHECK(rho_lambda(2.0, 3.0) == 0.5);
  CHECK(rho_lambda(0.1, 3.0) == 3.0);
}

TEST_CASE("single mode without source is exact", "[solver]") {
  const GridSpec g(1, 64, 8.0);
  const int k = 3;
  const auto pb = cauchy(mode(g, k), 0.4, 1.5);
  const auto sol = solve(pb, 10);
  CHECK(sol.u.slices.front().values == pb.g.values);
  const double psi = -2.0 * kPi * kPi * k / g.L;
  for (std::size_t j = 0; j < sol.u.slices.size(); ++j) {
    Field want = pb.g;
    for (auto& v : want.values) v *= std::exp((psi - pb.lambda) * sol.u.time(j));
    CHECK(max_diff(sol.u.slices[j], want) <= 1e-12);
  }
  CHECK(sol.rho_lambda == Approx(1.5));
}

TEST_CASE("constant-in-time source, including the series branch", "[solver]") {
  const GridSpec g(1, 64, 8.0);
  const double T = 2.0;
  const int steps = 8;
  const double psi = -2.0 * kPi * kPi * 2 / g.L;
  for (double lambda : {0.0, 0.9}) {
    auto pb = cauchy(Field(g), lambda, T);
    pb.f = constant_series(mode(g, 2), T, steps);
    const auto sol = solve(pb, steps);
    const double z = psi - lambda;
    for (std::size_t j = 0; j < sol.u.slices.size(); ++j) {
      const double t = sol.u.time(j);
      Field want = mode(g, 2);
      for (auto& v : want.values) v *= (std::exp(z * t) - 1.0) / z;
      CHECK(max_diff(sol.u.slices[j], want) <= 1e-12);
    }
  }
  // psi(0) = 0 with lambda = 0 leaves z = 0: u = t f.
  Field one(g);
  for (auto& v : one.values) v = 1.0;
  auto pb = cauchy(Field(g), 0.0, T);
  pb.f = constant_series(one, T, steps);
  const auto sol = solve(pb, steps);
  for (std::size_t j = 0; j < sol.u.slices.size(); ++j)
    for (const auto& v : sol.u.slices[j].values) REQUIRE(v.real() == Approx(sol.u.time(j)).epsilon(1e-13));
}

TEST_CASE("I and R operators", "[solver]") {
  const GridSpec g(1, 64, 8.0);
  const auto g0 = spaces::band_limited_member(g, {}, 5);
  const double T = 1.0;
  const int steps = 16;
  auto pb = cauchy(g0, 0.5, T);
  FieldSeries f{g, T, {}};
  for (int k = 0; k <= steps; ++k) {
    Field s = spaces::band_limited_member(g, {}, 6);
    const double t = T * k / steps;
    for (auto& v : s.values) v *= 1.0 + t * t;
    f.slices.push_back(s);
  }
  pb.f = f;
  CHECK(max_diff(apply_I_lambda(pb, g0, 0.0), g0) <= 1e-15);
  CHECK(sup_norm(apply_R_lambda(pb, f, 0.0)) <= 1e-15);
  CHECK_THROWS_AS(apply_I_lambda(pb, g0, 1.5), DomainError);

  const auto sol = solve(pb, steps);
  for (std::size_t j : {4u, 11u, 16u}) {
    const double t = sol.u.time(j);
    Field sum = apply_I_lambda(pb, g0, t);
    const auto R = apply_R_lambda(pb, f, t);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += R[i];
    CHECK(max_diff(sum, sol.u.slices[j]) <= 1e-12);
  }

  double prev = 1e300;
  for (double lambda : {0.0, 1.0, 5.0, 25.0}) {
    pb.lambda = lambda;
    const double v = lp_norm(apply_I_lambda(pb, g0, 0.5), 2.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("solve is linear in the data", "[solver]") {
  const GridSpec g(1, 64, 8.0);
  const auto g1 = spaces::band_limited_member(g, {}, 1), g2 = spaces::band_limited_member(g, {}, 2);
  const auto f1 = spaces::band_limited_member(g, {}, 3), f2 = spaces::band_limited_member(g, {}, 4);
  const double a = 1.7, b = -0.6;
  auto p1 = cauchy(g1, 0.2, 1.0), p2 = cauchy(g2, 0.2, 1.0);
  p1.f = constant_series(f1, 1.0, 6);
  p2.f = constant_series(f2, 1.0, 6);
  Field gc(g), fc(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    gc[i] = a * g1[i] + b * g2[i];
    fc[i] = a * f1[i] + b * f2[i];
  }
  auto pc = cauchy(gc, 0.2, 1.0);
  pc.f = constant_series(fc, 1.0, 6);
  const auto s1 = solve(p1, 6), s2 = solve(p2, 6), sc = solve(pc, 6);
  for (std::size_t j = 0; j < sc.u.slices.size(); ++j) {
    Field want(g);
    for (std::size_t i = 0; i < g.size(); ++i) want[i] = a * s1.u.slices[j][i] + b * s2.u.slices[j][i];
    CHECK(max_diff(sc.u.slices[j], want) <= 1e-12);
  }
}

TEST_CASE("problem validation", "[solver]") {
  const GridSpec g(1, 64, 8.0);
  CHECK_THROWS_AS(solve(cauchy(mode(g, 1), 0.0, -1.0), 4), DomainError);
  CHECK_THROWS_AS(solve(cauchy(mode(g, 1), -0.5, 1.0), 4), DomainError);
  CHECK_THROWS_AS(solve(cauchy(mode(g, 1), 0.0, 1.0), 0), DomainError);
  auto pb = cauchy(mode(g, 1), 0.0, 1.0);
  pb.f = constant_series(mode(g, 1), 1.0, 3);
  CHECK_THROWS_AS(solve(pb, 4), DomainError);
}

TEST_CASE("resolvent", "[resolvent]") {
  const GridSpec g(1, 64, 8.0);
  const auto mu = LevyMeasure::stable(1, 1.3);
  CHECK(sup_norm(resolvent(mu, Field(g))) == 0.0);
  Field c(g);
  for (auto& v : c.values) v = 2.5;
  CHECK(max_diff(resolvent(mu, c), c) <= 1e-14);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(resolvent_roundtrip_error(mu, spaces::band_limited_member(g, {}, k)) <= 1e-10);
  const auto Lf = apply_generator(mu, mode(g, 2));
  const double psi = spectral::symbol(mu, g)[2].real();
  CHECK(max_diff(Lf, [&] {
          Field w = mode(g, 2);
          for (auto& v : w.values) v *= psi;
          return w;
        }()) <= 1e-12 * std::abs(psi));
}

TEST_CASE("a priori report", "[apriori]") {
  const GridSpec g(1, 64, 8.0);
  const auto mu = LevyMeasure::stable(1, 1.0);
  const auto ctx = spaces::make_context(2, g, ScalingTriple::power(1.0), spectral::symbol(mu, g), 1.0);

  auto zero = cauchy(Field(g), 0.0, 1.5);
  const auto zs = solve(zero, 4);
  const auto n0 = apriori_norms(zero, zs, ctx);
  CHECK(n0.u == 0.0);
  CHECK(n0.Lmu_u == 0.0);
  CHECK(n0.f == 0.0);
  CHECK(n0.g_bessel == 0.0);
  CHECK(n0.rho == 1.5);

  for (const auto& pb : random_family(5, 3, g, 16)) {
    const auto sol = solve(pb, 16);
    const auto r = apriori_report(pb, sol, ctx);
    CHECK(r.passed());
    CHECK(r.metrics.at("r2") <= 1.0 + 1e-6);
    CHECK(r.metrics.at("rho_lambda") == Approx(rho_lambda(pb.lambda, pb.T)));
  }
}

TEST_CASE("residual checks", "[residual]") {
  const GridSpec g(1, 64, 8.0);
  const auto zero = cauchy(Field(g), 0.0, 1.0);
  CHECK(residual_check(zero, solve(zero, 8)).value == 0.0);

  const auto pb = cauchy(mode(g, 2), 0.3, 1.0);
  // Fine steps keep the clean residual at the O(dt^2) level.
  auto sol = solve(pb, 256);
  const double clean = residual_check(pb, sol).value;
  for (std::size_t j = 1; j < sol.u.slices.size(); ++j)
    for (std::size_t i = 0; i < g.size(); ++i) sol.u.slices[j][i] += 1e-3 * std::sin(7.0 * i + 3.0 * j);
  CHECK(residual_check(pb, sol).value >= 10.0 * clean);

  const auto conv = residual_convergence(pb, {16, 32, 64, 128});
  CHECK(conv.passed());
  CHECK(conv.value == Approx(2.0).margin(0.1));
}
