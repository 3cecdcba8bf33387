#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/grid.hpp"
#include "nlc/core/parallel.hpp"
#include "nlc/core/quadrature.hpp"
#include "nlc/core/report.hpp"
#include "nlc/core/rng.hpp"
#include "nlc/core/stats.hpp"

using Catch::Approx;
using namespace nlc;

TEST_CASE("grid points and frequencies follow FFT order", "[grid]") {
  const GridSpec g(1, 8, 4.0);
  REQUIRE(g.size() == 8);
  CHECK(g.h() == Approx(0.5));
  CHECK(g.point(0)[0] == Approx(-2.0));
  CHECK(g.frequency(1)[0] == Approx(0.25));
  CHECK(g.frequency(7)[0] == Approx(-0.25));
  CHECK(g.nyquist() == Approx(1.0));

  const GridSpec g2(2, 8, 1.0);
  REQUIRE(g2.size() == 64);
  CHECK(g2.cell_volume() == Approx(1.0 / 64.0));
  const auto idx = g2.unravel(13);
  CHECK(idx[0] * 8 + idx[1] == 13);
  CHECK_THROWS_AS(GridSpec(1, 12, 1.0), DomainError);
}

TEST_CASE("forward of a single mode is a scaled delta", "[fft]") {
  const GridSpec g(1, 32, 2.0);
  Field f(g);
  const int k0 = 3;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    f[i] = std::exp(cplx{0.0, 2.0 * std::numbers::pi * k0 / g.L * x});
  }
  const auto c = forward(f);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double want = static_cast<int>(i) == k0 ? g.L : 0.0;
    CHECK(std::abs(c[i] - cplx{want, 0.0}) < 1e-12);
  }
}

TEST_CASE("forward then inverse is the identity", "[fft]") {
  for (int d : {1, 2, 3}) {
    const GridSpec g(d, d == 3 ? 8 : 16, 3.0);
    Field f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = {std::sin(0.37 * i), std::cos(1.3 * i)};
    const auto back = inverse(g, forward(f));
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
    CHECK(err < 1e-13);
  }
}

TEST_CASE("Plancherel with the cell-volume convention", "[fft]") {
  const GridSpec g(1, 64, 5.0);
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-g.point(i)[0] * g.point(i)[0]);
  const auto c = forward(f);
  double freq = 0.0;
  for (const auto& v : c) freq += std::norm(v);
  freq /= g.L;
  const double phys = std::pow(lp_norm(f, 2.0), 2.0);
  CHECK(freq == Approx(phys).epsilon(1e-12));
}

TEST_CASE("Lp norms and distances", "[grid]") {
  const GridSpec g(1, 8, 4.0);
  Field f(g, {cplx{1, 0}, cplx{-2, 0}, cplx{0, 3}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0},
              cplx{0, 0}});
  CHECK(sup_norm(f) == Approx(3.0));
  CHECK(lp_norm(f, 1.0) == Approx(0.5 * 6.0));
  CHECK(lp_norm(f, 2.0) == Approx(std::sqrt(0.5 * 14.0)));
  CHECK(lp_distance(f, f, 2.0) == 0.0);
}

TEST_CASE("Gauss-Legendre and panel rules integrate polynomials", "[quadrature]") {
  CHECK_THROWS_AS(gauss_legendre(7), DomainError);
  const auto& q = gauss_legendre(10);
  double w = 0.0;
  for (double v : q.w) w += v;
  CHECK(w == Approx(2.0));
  const auto p = linear_panels(0.0, 3.0, 4, 5);
  CHECK(integrate(p, [](double x) { return x * x * x; }) == Approx(81.0 / 4.0).epsilon(1e-13));
  const auto lp = log_panels(1e-3, 1e3, 12, 10);
  CHECK(integrate(lp, [](double x) { return 1.0 / x; }) == Approx(std::log(1e6)).epsilon(1e-10));
}

TEST_CASE("radial integrals extrapolate power ends and flag divergence", "[quadrature]") {
  // int_0^inf r^{-1/2} / (1 + r) dr = pi
  const double v = integrate_radial([](double r) { return std::pow(r, -0.5) / (1.0 + r); }, 0.0,
                                    std::numeric_limits<double>::infinity());
  CHECK(v == Approx(std::numbers::pi).epsilon(1e-6));
  CHECK_THROWS_AS(integrate_radial([](double r) { return 1.0 / r; }, 0.0, 1.0), DivergentIntegral);
  try {
    integrate_radial([](double r) { return std::pow(r, -0.9); }, 1.0, std::numeric_limits<double>::infinity());
    FAIL("expected divergence");
  } catch (const DivergentIntegral& e) {
    CHECK(e.side() == "infinity");
    CHECK(e.exponent() == Approx(-0.9).margin(1e-6));
  }
}

TEST_CASE("pairwise sum and log slope", "[quadrature]") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v.data(), v.size()) == Approx(100.0).epsilon(1e-14));
  CHECK(log_slope([](double r) { return 3.0 * std::pow(r, -1.5); }, 0.5, 2.0) == Approx(-1.5));
}

TEST_CASE("line fits recover exact slopes", "[stats]") {
  std::vector<double> x{1, 2, 4, 8, 16}, y;
  for (double v : x) y.push_back(2.5 * std::pow(v, -0.75));
  const auto f = fit_loglog(x, y);
  CHECK(f.slope == Approx(-0.75));
  CHECK(std::exp(f.intercept) == Approx(2.5));
  CHECK(f.residual_rms < 1e-12);
}

TEST_CASE("sample summary and p-values", "[stats]") {
  std::vector<double> v{1, 2, 3, 4};
  const auto s = summarize(v);
  CHECK(s.mean == Approx(2.5));
  CHECK(s.stderr_ == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(s.count == 4);
  CHECK(chi_square_pvalue(2.0, 2.0) == Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(ks_pvalue(0.0, 1000) == Approx(1.0));
  CHECK(ks_pvalue(1.63 / std::sqrt(1e5), 100000) == Approx(0.01).margin(2e-3));
}

TEST_CASE("Philox streams are reproducible and independent", "[rng]") {
  PhiloxStream a(42, 7, 0), b(42, 7, 0), c(42, 7, 1), d(42, 8, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    CHECK(va == b());
    seen.insert(va);
    seen.insert(c());
    seen.insert(d());
  }
  CHECK(seen.size() == 300);
  PhiloxStream u(1, 0);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = u.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    mean += x;
  }
  CHECK(mean / 20000 == Approx(0.5).margin(0.01));
}

TEST_CASE("parallel_for visits every index and rethrows", "[parallel]") {
  set_thread_count(4);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) REQUIRE(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 5) throw NumericalGuard("boom");
                  }),
                  NumericalGuard);
  set_thread_count(1);
  CHECK(thread_count() == 1);
}

TEST_CASE("check reports move from Skip to Pass to Fail", "[report]") {
  CheckReport r;
  CHECK(r.status == Status::Skip);
  r.require(true, "first");
  CHECK(r.passed());
  r.require(false, "second");
  CHECK(r.status == Status::Fail);
  r.require(true, "third");
  CHECK(r.status == Status::Fail);
  const auto j = to_json(r);
  CHECK(j["status"] == "FAIL");
  CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
  CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
}
