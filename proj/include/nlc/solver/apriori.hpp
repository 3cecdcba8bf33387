#pragma once

#include <cstdint>
#include <vector>

#include "nlc/core/report.hpp"
#include "nlc/solver/cauchy.hpp"
#include "nlc/spaces/norms.hpp"

namespace nlc::solver {

struct AprioriNorms {
  double Lmu_u = 0.0;    // |L^mu u|_{H^s_p(E)}
  double f = 0.0;        // |f|_{H^s_p(E)}
  double g_besov = 0.0;  // |g|_{B_pp^{s+1-1/p}}
  double g_bessel = 0.0; // |g|_{H^s_p}
  double u = 0.0;        // |u|_{H^s_p(E)}
  double rho = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

AprioriNorms apriori_norms(const CauchyProblem& problem, const Solution& sol,
                           const spaces::NormContext& ctx);

// r1 and r2' together with the slice estimates
//   |u(t)|_p <= |g|_p + int_0^t |f|_p                (per slice)
//   |u|_{L_p(E)} <= rho |f|_{L_p(E)} + rho^{1/p} |g|_p
// each with absolute slack 1e-8. At p = 2 the norms are recomputed from
// mode sums and the explicit multiplier bound is reported.
CheckReport apriori_report(const CauchyProblem& problem, const Solution& sol,
                           const spaces::NormContext& ctx);

// Max over interior slices of |D_t u - L^pi u + lambda u - f|_2, D_t centred.
CheckReport residual_check(const CauchyProblem& problem, const Solution& sol);

// Slope of the residual against the step over the given step counts.
CheckReport residual_convergence(const CauchyProblem& problem, const std::vector<int>& steps,
                                 double target = 2.0, double tol = 0.1);

// Random problems: stable pi and mu of order sigma, lambda in {0} u [0.1, 5],
// T in [0.5, 2], corpus datum, source sum_i c_i(t) e_i with c_i quadratic.
std::vector<CauchyProblem> random_family(std::size_t count, std::uint64_t seed, const GridSpec& grid,
                                         int n_steps, double sigma = 1.0);

}  // namespace nlc::solver
