#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/spaces/corpus.hpp"
#include "nlc/spaces/norms.hpp"
#include "nlc/spaces/partition.hpp"
#include "nlc/symbol/symbol.hpp"

using Catch::Approx;
using namespace nlc;
using namespace nlc::spaces;

namespace {

Field mode(const GridSpec& g, double xi) {
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::cos(2.0 * std::numbers::pi * xi * g.point(i)[0]);
  return f;
}

NormContext cauchy_context(const GridSpec& g, int N = 2) {
  const auto mu = levy::LevyMeasure::stable(g.d, 1.0);
  return make_context(N, g, levy::ScalingTriple::power(1.0), spectral::symbol(mu, g), 1.0);
}

}  // namespace

TEST_CASE("blocks form a partition of unity on the lattice", "[partition]") {
  for (int N : {2, 3, 4}) {
    for (const GridSpec& g : {GridSpec(1, 256, 8.0), GridSpec(2, 32, 4.0)}) {
      const auto P = build_partition(N, g);
      REQUIRE(P.count() >= 3);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double s = 0.0;
        for (const auto& b : P.blocks) s += b[i];
        worst = std::max(worst, std::abs(s - 1.0));
      }
      CHECK(worst <= 1e-12);
      for (int j = 0; j < static_cast<int>(P.count()); ++j) {
        const auto t = P.tilde(j);
        for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(t[i] * P.blocks[j][i] == Approx(P.blocks[j][i]).margin(1e-12));
      }
    }
  }
}

TEST_CASE("partition base too large for the grid is rejected", "[partition]") {
  CHECK_THROWS_AS(build_partition(8, GridSpec(1, 16, 4.0)), DomainError);
  CHECK_THROWS_AS(build_partition(1, GridSpec(1, 64, 4.0)), DomainError);
}

TEST_CASE("block supports follow the frequency content", "[partition]") {
  const GridSpec g(1, 128, 8.0);
  const auto P = build_partition(2, g);
  REQUIRE(P.count() == 4);

  Field c(g);
  for (auto& v : c.values) v = 3.0;
  const auto sc = forward(c);
  for (int j = 0; j < 4; ++j) CHECK(sup_norm(P.block_part(j, sc)) == Approx(j == 0 ? 3.0 : 0.0).margin(1e-12));

  // Content in (N^0, N^2) touches blocks 0, 1 and 2 only.
  Field f = mode(g, 1.5);
  const auto m3 = mode(g, 3.0);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] += m3[i];
  const auto sf = forward(f);
  CHECK(sup_norm(P.block_part(3, sf)) <= 1e-12);
  CHECK(sup_norm(P.block_part(1, sf)) > 0.1);
}

TEST_CASE("Besov variants agree at s = 0, q = p", "[besov]") {
  const GridSpec g(1, 128, 8.0);
  const auto ctx = cauchy_context(g);
  const auto f = band_limited_member(g, {}, 3);
  const double p = 3.0;
  const auto a = besov_norm(f, 0.0, p, p, Weighting::Kappa, ctx);
  const auto b = besov_norm(f, 0.0, p, p, Weighting::Bessel, ctx);
  const auto spec = forward(f);
  double acc = 0.0;
  for (int j = 0; j < static_cast<int>(ctx.partition.count()); ++j) acc += std::pow(lp_norm(ctx.partition.block_part(j, spec), p), p);
  CHECK(a.value == Approx(std::pow(acc, 1.0 / p)).epsilon(1e-12));
  CHECK(b.value == Approx(a.value).epsilon(1e-12));
  CHECK(a.components.size() == ctx.partition.count());
}

TEST_CASE("single-block function picks up the kappa weight", "[besov]") {
  const GridSpec g(1, 128, 8.0);
  const auto ctx = cauchy_context(g);
  const auto f = mode(g, 2.0);  // |xi| = N^1 sits in block 1 alone
  for (double s : {0.5, 1.3}) {
    const auto r = besov_norm(f, s, 2.0, 2.0, Weighting::Kappa, ctx);
    CHECK(r.value == Approx(std::pow(0.5, -s) * lp_norm(f, 2.0)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(besov_norm(f, 0.5, 1.0, 2.0, Weighting::Kappa, ctx), DomainError);
}

TEST_CASE("Besov variants are comparable on a corpus under refinement", "[besov]") {
  std::vector<double> lo, hi;
  for (int n : {128, 256}) {
    const GridSpec g(1, n, 8.0);
    const auto ctx = cauchy_context(g);
    double rmin = 1e300, rmax = 0.0;
    for (const auto& f : band_limited_corpus(g, {.count = 20})) {
      const double r = besov_norm(f, 0.8, 2.0, 2.0, Weighting::Kappa, ctx).value /
                       besov_norm(f, 0.8, 2.0, 2.0, Weighting::Bessel, ctx).value;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
    lo.push_back(rmin);
    hi.push_back(rmax);
  }
  CHECK(lo[0] > 0.0);
  CHECK(lo[1] == Approx(lo[0]).epsilon(0.1));
  CHECK(hi[1] == Approx(hi[0]).epsilon(0.1));
}

TEST_CASE("Triebel direct variant and the Bessel isometry", "[triebel]") {
  const GridSpec g(1, 128, 8.0);
  const auto ctx = cauchy_context(g);
  const auto f = band_limited_member(g, {}, 7);
  CHECK(triebel_norm(f, 0.0, 2.5, Weighting::Bessel, ctx).value == Approx(lp_norm(f, 2.5)).epsilon(1e-13));
  for (double s : {0.4, 1.0, 2.0}) {
    const auto h = bessel_potential(f, -s, ctx.psi_mu);
    CHECK(triebel_norm(h, s, 2.5, Weighting::Bessel, ctx).value ==
          Approx(triebel_norm(f, 0.0, 2.5, Weighting::Bessel, ctx).value).epsilon(1e-10));
  }
  // Square function on one block reduces to the weighted block norm.
  const auto m = mode(g, 2.0);
  CHECK(triebel_norm(m, 1.0, 2.0, Weighting::Kappa, ctx).value == Approx(2.0 * lp_norm(m, 2.0)).epsilon(1e-10));
}

TEST_CASE("difference norms", "[difference]") {
  const GridSpec g(1, 64, 8.0);
  const auto ctx = cauchy_context(g);
  CHECK(least_difference_order(0.5, 1.5) == 1);
  CHECK(least_difference_order(1.0, 1.0) == 2);
  CHECK_THROWS_AS(difference_norm(mode(g, 1.0), 1.0, 2.0, 2.0, 1, DifferenceVariant::Triebel, ctx), DomainError);

  // Constants are the only affine functions on the torus; m = 2 kills them.
  Field c(g);
  for (auto& v : c.values) v = 2.0;
  for (auto v : {DifferenceVariant::Triebel, DifferenceVariant::Besov}) {
    const auto r = difference_norm(c, 1.0, 2.0, 2.0, 2, v, ctx);
    CHECK(r.parameters.at("oscillation_part") <= 1e-12);
    CHECK(r.value == Approx(lp_norm(c, 2.0)).epsilon(1e-12));
    CHECK(difference_norm(Field(g), 1.0, 2.0, 2.0, 2, v, ctx).value == 0.0);
  }
  const auto r = difference_norm(mode(g, 1.0), 0.5, 2.0, 2.0, 1, DifferenceVariant::Triebel, ctx);
  CHECK(r.parameters.at("oscillation_part") > 0.0);
}

TEST_CASE("space-time norms", "[space_time]") {
  const GridSpec g(1, 64, 8.0);
  const auto psi = spectral::symbol(levy::LevyMeasure::stable(1, 1.0), g);
  const auto f = band_limited_member(g, {}, 1);
  const double p = 3.0;

  FieldSeries u{g, 2.0, std::vector<Field>(9, f)};
  CHECK(space_time_norm(u, 0.0, p, psi).value == Approx(std::pow(2.0, 1.0 / p) * lp_norm(f, p)).epsilon(1e-12));

  FieldSeries zero{g, 1.0, std::vector<Field>(5, Field(g))};
  CHECK(space_time_norm(zero, 0.5, p, psi).value == 0.0);

  const double exact = std::pow((1.0 - std::exp(-p)) / p, 1.0 / p) * lp_norm(f, p);
  std::vector<double> err;
  for (int steps : {16, 32}) {
    FieldSeries e{g, 1.0, {}};
    for (int k = 0; k <= steps; ++k) {
      Field s = f;
      for (auto& v : s.values) v *= std::exp(-static_cast<double>(k) / steps);
      e.slices.push_back(s);
    }
    err.push_back(std::abs(space_time_norm(e, 0.0, p, psi).value - exact));
  }
  CHECK(err[0] < 1e-2);
  CHECK(err[0] / err[1] == Approx(4.0).margin(0.2));

  FieldSeries one{g, 1.0, {f}};
  CHECK_THROWS_AS(space_time_norm(one, 0.0, p, psi), DomainError);
}
