#pragma once

#include <vector>

#include "nlc/core/grid.hpp"

namespace nlc::spaces {

// Littlewood-Paley blocks of base N sampled on the frequency lattice.
struct LPPartition {
  int N = 2;
  int j_max = 0;
  GridSpec grid;
  std::vector<std::vector<double>> blocks;  // blocks[j][k], FFT order
  bool beyond_coverage = false;             // lattice points above N^j_max joined the last block

  std::size_t count() const { return blocks.size(); }
  // phi_{j-1} + phi_j + phi_{j+1}.
  std::vector<double> tilde(int j) const;
  // phi_j * f in physical space.
  Field block_part(int j, const std::vector<cplx>& spectrum) const;
};

// Smooth bump of log_N|xi| supported in (1/N, N).
double lp_bump(double radius, int N);
// rho(r) / sum_k rho(N^-k r).
double lp_profile(double radius, int N);

// Throws DomainError for N < 2 or fewer than three blocks.
LPPartition build_partition(int N, const GridSpec& grid);

}  // namespace nlc::spaces
