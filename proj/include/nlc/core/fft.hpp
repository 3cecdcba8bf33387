#pragma once

#include <vector>

#include "nlc/core/grid.hpp"

namespace nlc {

// Continuous-transform approximation on the periodic box:
//   forward:  c(xi_k) = h^d sum_j f(x_j) exp(-i 2 pi xi_k . x_j)
//   inverse:  f(x_j)  = L^-d sum_k c(xi_k) exp(i 2 pi xi_k . x_j)
// Coefficients are stored in FFT order. inverse(forward(f)) == f.
std::vector<cplx> forward(const Field& f);
Field inverse(const GridSpec& grid, std::vector<cplx> coeffs);

// Raw unnormalised in-place DFT (sign -1 forward, +1 backward).
void dft_inplace(const GridSpec& grid, std::vector<cplx>& data, int sign);

}  // namespace nlc
