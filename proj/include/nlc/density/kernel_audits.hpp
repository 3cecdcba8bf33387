#pragma once

#include <array>
#include <vector>

#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::density {

using MultiIndex = std::array<int, 3>;

// F^-1[psi_pi (i 2 pi xi)^k exp(psi_mu t)], i.e. L^pi D^k p^mu(t, .).
Field operator_kernel(const spectral::SpectralMultiplier& psi_pi,
                      const spectral::SpectralMultiplier& psi_mu, double t, const MultiIndex& k);

struct KernelBoundSpec {
  MultiIndex k{0, 0, 0};
  std::vector<double> t_grid;
  std::vector<double> c_grid;  // tail radii in units of a(t_tail)
  double t_tail = 1.0;
  double alpha2 = 0.5;
  double M = 1.0;              // moment bound of the operator measure
  int d = 1;
  int n = 1024;
  double L_rel = 1024.0;       // torus period over a(t)
  double slope_tol_t = 0.05;
  double slope_tol_a = 0.1;
  double slope_tol_c = 0.1;
};

// Integral and tail bounds for L^pi D^k p^mu: log-log slopes in t, a(t) and c
// against -1, -|k| and -alpha2, plus fitted constants.
CheckReport kernel_bound_audit(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                               const levy::ScalingTriple& kappa, const KernelBoundSpec& spec);

struct MvtSpec {
  std::vector<double> t_grid;
  std::vector<double> shift_over_a;  // |y| / a(t)
  int d = 1;
  int n = 1024;
  double slope_tol = 0.05;
};

// int |L^pi p(t, . - y) - L^pi p(t, .)| <= C |y| / (t a(t)); slope in |y| is 1.
CheckReport mvt_audit(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                      const levy::ScalingTriple& kappa, const MvtSpec& spec);

}  // namespace nlc::density
