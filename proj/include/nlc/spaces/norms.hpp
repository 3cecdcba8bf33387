#pragma once

#include <functional>

#include "nlc/core/grid.hpp"
#include "nlc/core/report.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/spaces/partition.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::spaces {

enum class Weighting { Kappa, Bessel };
enum class DifferenceVariant { Triebel, Besov };

// Everything a norm needs besides the field: the partition, the scaling
// function of mu, the symmetric symbol of mu and the exponent alpha1 that
// fixes the least admissible difference order.
struct NormContext {
  LPPartition partition;
  levy::ScalingTriple kappa;
  spectral::SpectralMultiplier psi_mu;
  double alpha1 = 1.0;
};

NormContext make_context(int N, const GridSpec& grid, const levy::ScalingTriple& kappa,
                         const spectral::SpectralMultiplier& psi_mu, double alpha1);

// (sum_j w_j^q |phi_j * f|_p^q)^(1/q), w_j = kappa(N^-j)^-s or J^s per block.
NormReport besov_norm(const Field& f, double s, double p, double q, Weighting w,
                      const NormContext& ctx);
// Kappa: square-function form |(sum_j |kappa(N^-j)^-s phi_j * f|^2)^(1/2)|_p.
// Bessel: |J^s f|_p directly.
NormReport triebel_norm(const Field& f, double s, double p, Weighting w, const NormContext& ctx);
// |f|_p plus the Q_t^m oscillation term aggregated in l2 (Triebel) or L_q (Besov).
NormReport difference_norm(const Field& f, double s, double p, double q, int m,
                           DifferenceVariant v, const NormContext& ctx);
// Least integer m with m > s alpha1.
int least_difference_order(double s, double alpha1);

// (int_0^T |u(t)|^p dt)^(1/p) with the trapezoid rule; slice norm |J^s u(t)|_p.
NormReport space_time_norm(const FieldSeries& u, double s, double p,
                           const spectral::SpectralMultiplier& psi_mu);
NormReport space_time_norm(const FieldSeries& u, double p,
                           const std::function<double(const Field&)>& slice_norm,
                           const std::string& name);

// Value of the multiplier J^s applied to f.
Field bessel_potential(const Field& f, double s, const spectral::SpectralMultiplier& psi_mu);

}  // namespace nlc::spaces
