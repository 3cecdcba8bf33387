#pragma once

#include <array>
#include <vector>

#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"

namespace nlc::density {

struct HormanderSample {
  double s = 0.0;                  // time shift, |s| <= kappa(delta)
  std::array<double, 3> y{};       // space shift, |y| <= delta
  double delta = 1.0;
};

struct HormanderSpec {
  double lambda = 0.0;
  double C0 = 0.0;          // 0 selects default_C0(kappa)
  int d = 1;
  int n = 4096;
  double L = 64.0;          // period of the unit-scale torus
  double envelope = 1e-10;  // time truncation level of the slowest torus mode
  double per_decade = 4.0;
  double trend_tol = 0.1;
};

// Smallest C0 > 3 on a 0.01 grid with 3 l(1) l(1/C0) < 1.
double default_C0(const levy::ScalingTriple& kappa);

// Extremal samples s = kappa(delta), y = delta e1 on a log grid of delta.
std::vector<HormanderSample> extremal_samples(const levy::ScalingTriple& kappa, int d, double delta_lo,
                                              double delta_hi, int count);

// Space-time integral of |K(t - s, x - y) - K(t, x)| off Q_{C0 delta}(0),
// K(t, .) = exp(-lambda t) L^pi p^{mu*}(t, .). Each sample is evaluated on the
// unit-scale problem (pi~_delta, mu~_delta, lambda kappa(delta)), which is an
// exact change of variables.
double hormander_integral(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                          const levy::ScalingTriple& kappa, const HormanderSample& sample,
                          const HormanderSpec& spec);

// Per-sample values, their max and the log-log trend against delta.
CheckReport hormander_audit(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                            const levy::ScalingTriple& kappa,
                            const std::vector<HormanderSample>& samples, const HormanderSpec& spec);

}  // namespace nlc::density
