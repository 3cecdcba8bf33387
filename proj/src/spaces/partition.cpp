#include "nlc/spaces/partition.hpp"

#include <cmath>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"

namespace nlc::spaces {

double lp_bump(double radius, int N) {
  if (!(radius > 0.0)) return 0.0;
  const double u = std::log(radius) / std::log(static_cast<double>(N));
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double lp_profile(double radius, int N) {
  const double rho = lp_bump(radius, N);
  if (rho == 0.0) return 0.0;
  const double u = std::log(radius) / std::log(static_cast<double>(N));
  double norm = 0.0;
  const double nd = static_cast<double>(N);
  for (int k = static_cast<int>(std::floor(u)) - 1; k <= static_cast<int>(std::ceil(u)) + 1; ++k)
    norm += lp_bump(radius * std::pow(nd, -k), N);
  return rho / norm;
}

std::vector<double> LPPartition::tilde(int j) const {
  std::vector<double> t(grid.size(), 0.0);
  for (int k = std::max(0, j - 1); k <= std::min<int>(j + 1, static_cast<int>(count()) - 1); ++k)
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += blocks[k][i];
  return t;
}

Field LPPartition::block_part(int j, const std::vector<cplx>& spectrum) const {
  std::vector<cplx> c(spectrum);
  const auto& b = blocks.at(j);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= b[i];
  return inverse(grid, std::move(c));
}

LPPartition build_partition(int N, const GridSpec& grid) {
  if (N < 2) throw DomainError("partition base must be an integer >= 2");
  const double nd = static_cast<double>(N);
  double r_max = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) r_max = std::max(r_max, grid.frequency_norm(i));
  const int j_max = static_cast<int>(std::ceil(std::log(r_max) / std::log(nd) - 1e-12));
  if (j_max + 1 < 3)
    throw DomainError("partition base too large for the grid: fewer than three blocks");
  LPPartition p;
  p.N = N;
  p.j_max = j_max;
  p.grid = grid;
  p.blocks.assign(j_max + 1, std::vector<double>(grid.size(), 0.0));
  const double top = std::pow(nd, j_max);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.frequency_norm(i);
    double acc = 0.0;
    for (int j = 1; j < j_max; ++j) {
      const double v = lp_profile(r * std::pow(nd, -j), N);
      p.blocks[j][i] = v;
      acc += v;
    }
    // The last block absorbs everything above its lower edge, the first
    // block everything below N.
    const double last = r >= std::pow(nd, j_max) ? 1.0 - acc : lp_profile(r / top, N);
    if (r > top) p.beyond_coverage = true;
    p.blocks[j_max][i] = last;
    p.blocks[0][i] = 1.0 - acc - last;
    if (r >= nd) p.blocks[0][i] = 0.0;
  }
  return p;
}

}  // namespace nlc::spaces
