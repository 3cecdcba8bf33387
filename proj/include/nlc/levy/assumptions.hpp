#pragma once

#include <vector>

#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"

namespace nlc::levy {

struct AssumptionParams {
  double alpha1 = 1.5;
  double alpha2 = 0.5;
  double n0 = 1e6;
  double N0 = 1e6;
  double c1 = 0.0;

  // Regime constraint on (alpha1, alpha2) for the given order.
  void validate(double sigma) const;
};

// pi~_R = kappa(R) pi(R dy).
LevyMeasure scale_measure(const LevyMeasure& pi, double R, const ScalingTriple& kappa);

std::vector<double> log_grid(double lo, double hi, int points);

// sup over R of int_{|z|<=1} |z|^a1 dpi~_R + int_{|z|>1} |z|^a2 dpi~_R vs N0.
CheckReport check_assumption_B(const LevyMeasure& pi, const ScalingTriple& kappa,
                               const AssumptionParams& params, const std::vector<double>& R_grid);

// int |y|^2 dmu0 + int |xi|^4 (1 + a0_lambda)^{d+3} e^{-psi0} dxi <= n0 and the
// directional nondegeneracy min_{|xi|=1} int |xi.y|^2 dmu0 >= c1. The
// weight a0_lambda(xi) = int chi |y| ((|xi||y|) ^ 1) dmu0 is unrelated to the
// damping constant of the equation.
CheckReport check_assumption_A0(const LevyMeasure& mu0, const AssumptionParams& params);

// Density-wise domination kappa(R) pi_R >= mu0 on r in (0, 1].
CheckReport check_assumption_D(const LevyMeasure& pi, const LevyMeasure& mu0,
                               const ScalingTriple& kappa, const std::vector<double>& R_grid);

// Largest c1 with kappa(R) pi_R >= c1 r^{-1-e} dr S(dw) on r <= 1 over R_grid.
double fit_lower_measure_constant(const LevyMeasure& pi, const ScalingTriple& kappa, double exponent,
                                  const std::vector<double>& R_grid);

struct OrderEstimate {
  double sigma = 0.0;
  double spread = 0.0;  // slope variation over the fitted window
  bool power_like = true;
};
// Log-log regression of int_{eps<|y|<=1} |y|^2 dpi as eps -> 0.
OrderEstimate estimate_order(const LevyMeasure& pi);

// Pointwise audits of a scaling triple: kappa(eps r) <= l(eps) kappa(r),
// inverse consistency, a(eps r) >= a(r) gamma(eps), power bounds with
// theta0 = log_N l(N), theta1 = -log_N l(1/N).
CheckReport audit_scaling(const ScalingTriple& s, double N = 2.0, int points = 50);

}  // namespace nlc::levy
