#include "nlc/mc/feynman_kac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/parallel.hpp"
#include "nlc/core/rng.hpp"
#include "nlc/core/stats.hpp"

namespace nlc::mc {

BandLimited::BandLimited(const Field& f, double rel_cut) : d_(f.grid.d) {
  const auto c = forward(f);
  double peak = 0.0;
  for (const auto& v : c) peak = std::max(peak, std::abs(v));
  scale_ = std::pow(f.grid.L, -f.grid.d);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k]) <= rel_cut * peak || peak == 0.0) continue;
    freq_.push_back(f.grid.frequency(k));
    coeff_.push_back(c[k]);
  }
}

double BandLimited::operator()(const Point& x) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < coeff_.size(); ++k) {
    double phase = 0.0;
    for (int a = 0; a < d_; ++a) phase += freq_[k][a] * x[a];
    phase *= 2.0 * std::numbers::pi;
    acc += coeff_[k].real() * std::cos(phase) - coeff_[k].imag() * std::sin(phase);
  }
  return acc * scale_;
}

BandLimitedSeries::BandLimitedSeries(const FieldSeries& f) : dt_(f.steps() > 0 ? f.dt() : 1.0) {
  if (f.slices.empty()) throw DomainError("source series has no slices");
  for (const auto& s : f.slices) slices_.emplace_back(s);
}

double BandLimitedSeries::operator()(double t, const Point& x) const {
  if (slices_.size() == 1) return slices_[0](x);
  const double u = std::clamp(t / dt_, 0.0, static_cast<double>(slices_.size() - 1));
  const std::size_t k = std::min(static_cast<std::size_t>(u), slices_.size() - 2);
  const double w = u - static_cast<double>(k);
  return (1.0 - w) * slices_[k](x) + w * slices_[k + 1](x);
}

FeynmanKacResult feynman_kac(const PathSampler& sampler, double lambda, const FieldSeries* f,
                             const Field& g, double t, const std::vector<Point>& probes,
                             std::size_t n_paths) {
  if (n_paths < 100) throw DomainError("feynman_kac needs at least 100 paths");
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (f && !(f->T + 1e-12 >= t)) throw DomainError("source series does not cover [0, t]");
  const BandLimited g_i(g);
  BandLimitedSeries f_i;
  if (f) f_i = BandLimitedSeries(*f);
  const std::size_t np = probes.size();
  std::vector<double> values(np * n_paths);
  const double decay = std::exp(-lambda * t);
  parallel_for(n_paths, [&](std::size_t i) {
    PhiloxStream strat(sampler.seed(), i, 2);
    const double r = t * (static_cast<double>(i) + strat.uniform()) / static_cast<double>(n_paths);
    const auto z = sampler.sample_at({r, t}, i);
    for (std::size_t p = 0; p < np; ++p) {
      Point xe{}, xr{};
      for (int a = 0; a < 3; ++a) {
        xe[a] = probes[p][a] + z[1][a];
        xr[a] = probes[p][a] + z[0][a];
      }
      double v = decay * g_i(xe);
      if (f) v += t * std::exp(-lambda * r) * f_i(t - r, xr);
      values[p * n_paths + i] = v;
    }
  });
  FeynmanKacResult out;
  out.n_paths = n_paths;
  out.bias_bound = sampler.bias_bound() * t;
  for (std::size_t p = 0; p < np; ++p) {
    const auto s = summarize(std::span<const double>(values.data() + p * n_paths, n_paths));
    out.probes.push_back({probes[p], s.mean, s.stderr_});
  }
  return out;
}

}  // namespace nlc::mc
