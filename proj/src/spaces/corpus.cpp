#include "nlc/spaces/corpus.hpp"

#include <cmath>
#include <numbers>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/rng.hpp"

namespace nlc::spaces {

Field band_limited_member(const GridSpec& grid, const CorpusSpec& spec, std::size_t index) {
  if (spec.min_band < 1 || spec.max_band < spec.min_band)
    throw DomainError("corpus band limits must satisfy 1 <= min_band <= max_band");
  if (2 * spec.max_band >= grid.n) throw DomainError("corpus band limit exceeds the grid Nyquist index");
  PhiloxStream rng(spec.seed, index, 7);
  const int span = spec.max_band - spec.min_band + 1;
  const int band = spec.min_band + static_cast<int>(rng.uniform() * span) % span;
  const int K = spec.max_band;
  const int side = 2 * K + 1;
  const int total = static_cast<int>(std::pow(side, grid.d));
  std::vector<cplx> coeff(grid.size(), cplx{0.0, 0.0});
  auto flat = [&](const std::array<int, 3>& k) {
    std::size_t f = 0;
    for (int a = 0; a < grid.d; ++a) f = f * grid.n + static_cast<std::size_t>((k[a] + grid.n) % grid.n);
    return f;
  };
  // Every wave vector in the box consumes draws, so the stream layout does
  // not depend on the random cutoff.
  for (int c = 0; c < total; ++c) {
    std::array<int, 3> k{0, 0, 0};
    int rem = c;
    double k2 = 0.0;
    for (int a = grid.d - 1; a >= 0; --a) {
      k[a] = rem % side - K;
      rem /= side;
      k2 += k[a] * k[a];
    }
    double z1, z2;
    box_muller(rng.uniform(), rng.uniform(), z1, z2);
    std::array<int, 3> neg{-k[0], -k[1], -k[2]};
    // Draw for the lexicographically larger of (k, -k); mirror onto the other.
    if (neg > k || std::sqrt(k2) > band) continue;
    const double amp = std::pow(1.0 + std::sqrt(k2), -spec.decay);
    cplx v = amp * cplx{z1, (k == neg) ? 0.0 : z2};
    coeff[flat(k)] = v;
    coeff[flat(neg)] = std::conj(v);
  }
  auto f = inverse(grid, std::move(coeff));
  for (auto& v : f.values) v = {v.real(), 0.0};
  const double n2 = lp_norm(f, 2.0);
  if (n2 > 0.0)
    for (auto& v : f.values) v /= n2;
  return f;
}

std::vector<Field> band_limited_corpus(const GridSpec& grid, const CorpusSpec& spec) {
  std::vector<Field> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(band_limited_member(grid, spec, i));
  return out;
}

}  // namespace nlc::spaces
