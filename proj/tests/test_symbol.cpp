#include <cmath>
#include <filesystem>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "nlc/core/error.hpp"
#include "nlc/core/grid.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/spaces/corpus.hpp"
#include "nlc/symbol/multiplier.hpp"
#include "nlc/symbol/symbol.hpp"
#include "oracles.hpp"

using Catch::Approx;
using namespace nlc;
using levy::AngularAtom;
using levy::LevyMeasure;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

Field gaussian(const GridSpec& g) {
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    f[i] = std::exp(-x * x);
  }
  return f;
}

// Order 3/2 with unequal weights on the two half-lines.
LevyMeasure skewed() {
  return LevyMeasure::stable(1, 1.5, 1.0, {AngularAtom{{1.0, 0.0, 0.0}, 1.0}, AngularAtom{{-1.0, 0.0, 0.0}, 0.3}});
}

}  // namespace

TEST_CASE("Cauchy symbol matches -2 pi^2 |xi|", "[symbol]") {
  const GridSpec g(1, 256, 16.0);
  const auto psi = spectral::symbol(LevyMeasure::stable(1, 1.0), g);
  double worst = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double xi = std::abs(g.frequency(i)[0]);
    if (xi > 8.0) continue;
    const double want = -2.0 * std::numbers::pi * std::numbers::pi * xi;
    worst = std::max(worst, std::abs(psi[i].real() - want) / std::abs(want));
  }
  CHECK(worst <= 1e-4);
  CHECK(psi[0] == cplx{0.0, 0.0});
}

TEST_CASE("stable symbol constants at orders 1/2 and 3/2", "[symbol]") {
  const GridSpec g(1, 64, 8.0);
  for (auto [sigma, C] : {std::pair{0.5, oracle::kStableC05}, std::pair{1.5, oracle::kStableC15}}) {
    const auto m = LevyMeasure::stable(1, sigma);
    CHECK(spectral::stable_constant(m) == Approx(C).epsilon(1e-10));
    const auto psi = spectral::symbol(m, g);
    for (std::size_t i : {1u, 5u, 31u}) {
      const double xi = g.frequency(i)[0];
      CHECK(psi[i].real() == Approx(-C * std::pow(2.0 * std::numbers::pi * xi, sigma)).epsilon(1e-6));
    }
  }
}

TEST_CASE("symmetric measures have real symbols", "[symbol]") {
  const GridSpec g(2, 32, 4.0);
  const auto psi = spectral::symbol(LevyMeasure::stable(2, 1.5), g);
  double im = 0.0;
  for (const auto& v : psi.values) im = std::max(im, std::abs(v.imag()));
  CHECK(im <= 1e-12);
}

TEST_CASE("symbol_sym is the nonpositive real part", "[symbol]") {
  const GridSpec g(1, 128, 8.0);
  const auto m = skewed();
  const auto psi = spectral::symbol(m, g);
  const auto sym = spectral::symbol_sym(m, g);
  double im = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(sym[i].real() <= 0.0);
    CHECK(sym[i].imag() == 0.0);
    CHECK(sym[i].real() == Approx(psi[i].real()));
    im = std::max(im, std::abs(psi[i].imag()));
  }
  CHECK(im > 1e-3);
  const auto c = LevyMeasure::stable(1, 1.0);
  const auto a = spectral::symbol(c, g), b = spectral::symbol_sym(c, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * (1.0 + std::abs(a[i])));
}

TEST_CASE("Cauchy operator on a periodized Gaussian", "[symbol][oracle]") {
  const GridSpec g(1, 1024, oracle::kCauchyGaussPeriod);
  const auto Lf = spectral::apply_multiplier(spectral::symbol(LevyMeasure::stable(1, 1.0), g), gaussian(g));
  for (std::size_t k = 0; k < oracle::kCauchyGaussX.size(); ++k) {
    for (double sgn : {1.0, -1.0}) {
      const double x = sgn * oracle::kCauchyGaussX[k];
      const auto i = static_cast<std::size_t>(std::lround((x + 0.5 * g.L) / g.h()));
      REQUIRE(g.point(i)[0] == Approx(x));
      CHECK(Lf[i].real() == Approx(oracle::kCauchyGaussPeriodic[k]).margin(1e-10));
      // Images add about 2 zeta(2) sqrt(pi) / L^2 to the free-space value.
      CHECK(std::abs(Lf[i].real() - oracle::kCauchyGaussFree[k]) < 7e-3);
    }
  }
}

TEST_CASE("comparability ratios", "[comparability]") {
  const GridSpec g(1, 128, 8.0);
  const auto mu = LevyMeasure::stable(1, 0.8);
  const auto same = spectral::check_comparability(mu, mu, g);
  CHECK(same.c1 == Approx(1.0));
  CHECK(same.c2 == Approx(1.0));
  const auto triple = spectral::check_comparability(mu.with_coefficient(3.0), mu, g);
  CHECK(triple.c1 == Approx(3.0).epsilon(1e-10));
  CHECK(triple.c2 == Approx(3.0).epsilon(1e-10));
  // Halving one half-line: the real part scales by 3/4, and the skew adds an
  // odd part 1/4 tan(pi sigma / 2) of the symmetric symbol. The ratio is constant in d = 1.
  const auto half = LevyMeasure::stable(1, 0.8, 1.0, {AngularAtom{{1.0, 0.0, 0.0}, 1.0}, AngularAtom{{-1.0, 0.0, 0.0}, 0.5}});
  const auto c = spectral::check_comparability(half, mu, g);
  const double skew = 0.25 * std::tan(0.4 * std::numbers::pi);
  const double want = std::sqrt(0.5625 + skew * skew);
  CHECK(c.c1 == Approx(want).epsilon(1e-6));
  CHECK(c.c2 == Approx(want).epsilon(1e-6));
}

TEST_CASE("multiplier action", "[multiplier]") {
  const GridSpec g(1, 64, 4.0);
  const auto f = spaces::band_limited_member(g, {}, 2);
  CHECK(max_abs_diff(spectral::apply_multiplier(spectral::constant_multiplier(g, 1.0), f), f) <= 1e-12);

  const auto psi = spectral::symbol(LevyMeasure::stable(1, 1.0), g);
  const int k0 = 5;
  Field mode(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    mode[i] = std::exp(cplx{0.0, 2.0 * std::numbers::pi * k0 / g.L * g.point(i)[0]});
  const auto out = spectral::apply_multiplier(psi, mode);
  Field want(g);
  for (std::size_t i = 0; i < g.size(); ++i) want[i] = psi[k0] * mode[i];
  CHECK(max_abs_diff(out, want) <= 1e-12 * std::abs(psi[k0]));

  const auto other = spectral::symbol(LevyMeasure::stable(1, 1.0), GridSpec(1, 32, 4.0));
  CHECK_THROWS_AS(spectral::apply_multiplier(other, f), DomainError);
}

TEST_CASE("Bessel multipliers", "[bessel]") {
  const GridSpec g(1, 128, 8.0);
  const auto mu = skewed();
  const auto J0 = spectral::bessel_multiplier(mu, 0.0, g);
  for (const auto& v : J0.values) CHECK(std::abs(v - cplx{1.0, 0.0}) <= 1e-15);

  const auto J1 = spectral::bessel_multiplier(mu, 1.0, g);
  const auto sym = spectral::symbol_sym(mu, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(J1[i].real() == Approx(1.0 - sym[i].real()));

  const auto f = spaces::band_limited_member(g, {}, 4);
  const auto back = spectral::apply_multiplier(spectral::bessel_multiplier(mu, -0.7, g),
                                               spectral::apply_multiplier(spectral::bessel_multiplier(mu, 0.7, g), f));
  CHECK(max_abs_diff(back, f) <= 1e-10);
}

TEST_CASE("fractional multipliers", "[fractional]") {
  const GridSpec g(1, 128, 8.0);
  const auto c = LevyMeasure::stable(1, 1.0);
  const auto one = spectral::fractional_multiplier(c, 1.0, g);
  const auto psi = spectral::symbol(c, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(one[i] - psi[i]) <= 1e-14 * (1.0 + std::abs(psi[i])));

  const auto half = spectral::fractional_multiplier(c, 0.5, g);
  CHECK(half[0] == cplx{0.0, 0.0});
  for (std::size_t i = 1; i < 40; ++i) {
    const double xi = std::abs(g.frequency(i)[0]);
    CHECK(half[i].real() == Approx(-std::sqrt(2.0 * std::numbers::pi * std::numbers::pi * xi)).epsilon(1e-4));
  }
  CHECK_THROWS_AS(spectral::fractional_multiplier(c, 1.5, g), DomainError);
}

TEST_CASE("multipliers are cached and persist to disk", "[cache]") {
  const GridSpec g(1, 64, 8.0);
  auto& cache = spectral::multiplier_cache();
  cache.clear();
  const auto m = LevyMeasure::stable(1, 0.9);
  const auto a = spectral::symbol(m, g);
  const auto hits = cache.hits();
  const auto b = spectral::symbol(m, g);
  CHECK(cache.hits() == hits + 1);
  CHECK(a.values == b.values);

  const auto dir = std::filesystem::temp_directory_path() / "nlc_test_symbol";
  std::filesystem::create_directories(dir);
  const auto base = (dir / "psi").string();
  spectral::save_multiplier(a, base, m.fingerprint());
  const auto c = spectral::load_multiplier(base);
  CHECK(c.grid == g);
  CHECK(c.values == a.values);
  std::filesystem::remove_all(dir);
}
