#pragma once

#include <array>
#include <string>
#include <vector>

#include "nlc/core/grid.hpp"
#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"

namespace nlc::density {

struct IntegrabilityCheck {
  bool ok = false;
  double small_time = 0.0;  // int_0^1 piece
  double large_time = 0.0;  // int_1^inf piece
  std::string divergent_piece;
};

// int_0^1 t^{delta-1} gamma(t)^{-e_small} dt + int_1^inf t^{delta-1} gamma(t)^{-e_large} dt.
IntegrabilityCheck gamma_integrability(const levy::ScalingTriple& kappa, double delta,
                                       double e_small, double e_large);
// Exponents d - d/q and 1 + d - d/q of the kernel bound.
IntegrabilityCheck embedding_integrability(const levy::ScalingTriple& kappa, double delta, double q,
                                           int d);

struct EmbeddingKernel {
  Field kernel;                 // y -> k(y, z) on the grid
  std::vector<cplx> spectrum;   // its transform
  double q = 1.0;
  double lq_norm = 0.0;
  double integral = 0.0;        // int k(y, z) dy
  IntegrabilityCheck precheck;
};

// k(y, z) = kappa(|z|)^delta |z|^-d int_0^inf t^{delta-1} [p(t, y/|z| + z^) - p(t, y/|z|)] dt
// with p the density of pi~_{|z|} (its symmetrisation if delta < 1). The time
// integral uses 48 log panels on each side of t = 1, applied mode by mode.
// Throws DomainError naming the divergent piece when the precheck fails.
EmbeddingKernel embedding_kernel(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                                 double delta, const std::array<double, 3>& z, const GridSpec& grid,
                                 double q);

// Sign-carrying constant of the increment representation: -1 for delta = 1,
// -1/Gamma(delta) otherwise (L^{pi;delta} is a negative operator).
double representation_constant(double delta);

// f(x + z) - f(x) against c int L^{pi;delta} f(x - y) k(y, z) dy.
CheckReport representation_check(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                                  double delta, const std::array<double, 3>& z, const Field& f,
                                  double q, double tolerance = 1e-3);

// |k(., z)|_q / (kappa(|z|)^delta |z|^{-d+d/q}) over z_grid on grids of period
// L_rel |z|; PASS when the fitted constant varies by at most max_spread.
CheckReport kernel_lq_audit(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                            double delta, double q, const std::vector<double>& z_grid, int d, int n,
                            double L_rel, double max_spread = 0.1);

struct HolderReports {
  CheckReport modulus;   // sup-modulus bound
  CheckReport lp_bound;  // L_p version with the |z|^{-d/p} weight and the sup bound
};

// z runs along e1 with |z| in z_grid.
HolderReports holder_modulus_audit(const levy::LevyMeasure& pi, const levy::ScalingTriple& kappa,
                                   const Field& f, const std::vector<double>& z_grid, double p,
                                   double delta, double trend_tol = 0.1);

}  // namespace nlc::density
