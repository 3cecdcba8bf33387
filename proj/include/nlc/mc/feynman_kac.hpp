#pragma once

#include <cstddef>
#include <vector>

#include "nlc/core/grid.hpp"
#include "nlc/mc/sampler.hpp"

namespace nlc::mc {

// Trigonometric interpolant of a periodic grid field, evaluable anywhere.
// Only the nonzero modes are kept, so sparse spectra evaluate cheaply.
class BandLimited {
 public:
  BandLimited() = default;
  explicit BandLimited(const Field& f, double rel_cut = 1e-14);
  double operator()(const Point& x) const;
  std::size_t modes() const { return coeff_.size(); }

 private:
  int d_ = 1;
  double scale_ = 1.0;
  std::vector<std::array<double, 3>> freq_;
  std::vector<cplx> coeff_;
};

// Piecewise linear in time between the slices of a FieldSeries.
class BandLimitedSeries {
 public:
  BandLimitedSeries() = default;
  explicit BandLimitedSeries(const FieldSeries& f);
  double operator()(double t, const Point& x) const;

 private:
  double dt_ = 1.0;
  std::vector<BandLimited> slices_;
};

struct ProbeEstimate {
  Point probe{};
  double estimate = 0.0;
  double stderr_ = 0.0;
};

struct FeynmanKacResult {
  std::vector<ProbeEstimate> probes;
  double bias_bound = 0.0;  // L1 bias of the truncated jumps over [0, t]
  std::size_t n_paths = 0;
};

// u(t,x) = e^{-lambda t} E g(x + Z_t) + int_0^t e^{-lambda r} E f(t - r, x + Z_r) dr.
// Path i carries the stratified time r_i = t (i + U_i) / n. f may be null.
FeynmanKacResult feynman_kac(const PathSampler& sampler, double lambda, const FieldSeries* f,
                             const Field& g, double t, const std::vector<Point>& probes,
                             std::size_t n_paths);

}  // namespace nlc::mc
