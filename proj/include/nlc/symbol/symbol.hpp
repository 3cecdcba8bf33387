#pragma once

#include <array>
#include <string>
#include <vector>

#include "nlc/core/grid.hpp"
#include "nlc/levy/measure.hpp"

namespace nlc::spectral {

// Values on the frequency lattice xi_k = k / L, stored in FFT order.
struct SpectralMultiplier {
  GridSpec grid;
  std::vector<cplx> values;
  std::string key;

  std::size_t size() const { return values.size(); }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

// psi(xi_k) for every lattice point; cached per (measure, grid).
SpectralMultiplier symbol(const levy::LevyMeasure& pi, const GridSpec& grid);
// Re psi = psi of the symmetrised measure; real and <= 0.
SpectralMultiplier symbol_sym(const levy::LevyMeasure& pi, const GridSpec& grid);

struct Comparability {
  double c1 = 0.0;  // min over xi != 0 of |psi_pi| / |psi_mu|
  double c2 = 0.0;  // max of the same ratio
  std::array<double, 3> argmin{};
  std::array<double, 3> argmax{};
};
// Throws DomainError when psi_mu vanishes at a nonzero lattice point.
Comparability check_comparability(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                                  const GridSpec& grid);
Comparability compare_symbols(const SpectralMultiplier& num, const SpectralMultiplier& den);

// F^-1[m F f].
Field apply_multiplier(const SpectralMultiplier& m, const Field& f);
// Pointwise multiply of spectral coefficients, no transforms.
void apply_in_frequency(const SpectralMultiplier& m, std::vector<cplx>& coeffs);

// (1 - Re psi_mu)^s.
SpectralMultiplier bessel_multiplier(const levy::LevyMeasure& mu, double s, const GridSpec& grid);
SpectralMultiplier bessel_from_symbol(const SpectralMultiplier& psi, double s);
// psi for delta = 1, -(-Re psi)^delta for delta in (0, 1).
SpectralMultiplier fractional_multiplier(const levy::LevyMeasure& pi, double delta,
                                         const GridSpec& grid);
SpectralMultiplier fractional_from_symbol(const SpectralMultiplier& psi, double delta);

// Constant multiplier, e.g. the identity.
SpectralMultiplier constant_multiplier(const GridSpec& grid, cplx value);

// c in psi(xi) = -c (2 pi |xi|)^sigma for a rotation-invariant stable measure,
// read off the symbol quadrature at |xi| = 1.
double stable_constant(const levy::LevyMeasure& stable);

}  // namespace nlc::spectral
