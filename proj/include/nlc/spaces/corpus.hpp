#pragma once

#include <cstdint>
#include <vector>

#include "nlc/core/grid.hpp"

namespace nlc::spaces {

struct CorpusSpec {
  std::size_t count = 50;
  int min_band = 2;   // lowest admissible cutoff in integer wave numbers
  int max_band = 12;  // highest cutoff; must stay below n / 2
  double decay = 1.0; // amplitude ~ (1 + |k|)^-decay
  std::uint64_t seed = 1;
};

// Real trigonometric polynomials with random cutoffs, unit L2 norm. A member
// depends on (seed, index) and the period only, so the same function is
// produced on any resolution of the same box.
std::vector<Field> band_limited_corpus(const GridSpec& grid, const CorpusSpec& spec);
Field band_limited_member(const GridSpec& grid, const CorpusSpec& spec, std::size_t index);

}  // namespace nlc::spaces
