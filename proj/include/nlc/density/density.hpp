#pragma once

#include <vector>

#include "nlc/core/grid.hpp"
#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::density {

// Largest exp(Re psi t) over the outermost lattice shell; inversion is
// refused above kAliasTolerance.
constexpr double kAliasTolerance = 1e-12;
double alias_level(const spectral::SpectralMultiplier& psi, double t);
// Smallest t passing the guard (Re psi on the shell is t-independent).
double alias_time(const spectral::SpectralMultiplier& psi);

// p(t, .) = F^-1[exp(psi t)]. For an asymmetric measure this is the law of
// -Z_t, the convolution kernel of E g(x + Z_t).
Field density(const levy::LevyMeasure& mu, double t, const GridSpec& grid);
Field density_from_symbol(const spectral::SpectralMultiplier& psi, double t);
// Same, skipping the guard; only for callers that control aliasing themselves.
Field density_unguarded(const spectral::SpectralMultiplier& psi, double t);

// Per-axis period max(L_min, 32 a(t)).
GridSpec density_grid(const levy::ScalingTriple& kappa, double t, int d, int n, double L_min = 16.0);

// Doubles n from n0 until the guard passes at time t on period L.
GridSpec resolve_grid(const levy::LevyMeasure& mu, double t, int d, int n0, double L);

// Checks p(t, x) = a^-d p~(1, x / a) with p~ the density of mu~_{a(t)}, on
// grids adapted to each t. Reports the max relative L1 discrepancy.
CheckReport density_scaling_check(const levy::LevyMeasure& mu, const levy::ScalingTriple& kappa,
                                  const std::vector<double>& t_grid, int d, int n,
                                  double tolerance);

// Mass, undershoot and semigroup defect |p(t+s) - p(t) * p(s)|_1.
struct DensityDiagnostics {
  double mass = 0.0;
  double min_value = 0.0;
  double semigroup_defect = 0.0;
};
DensityDiagnostics density_diagnostics(const spectral::SpectralMultiplier& psi, double t, double s);

}  // namespace nlc::density
