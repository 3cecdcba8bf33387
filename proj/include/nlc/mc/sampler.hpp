#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"

namespace nlc::mc {

using Point = std::array<double, 3>;

// Z_t = compound Poisson jumps beyond eps + drift t b + Gaussian substitute
// for the jumps below eps (order >= 1) or nothing (order < 1, with the
// L1 bias bound int_{|y|<=eps} |y| dpi recorded).
class PathSampler {
 public:
  PathSampler(const levy::LevyMeasure& measure, double jump_cut, std::uint64_t seed);
  // Halves the jump cut from eps0 until the bias bound is at most target.
  static PathSampler with_bias_target(const levy::LevyMeasure& measure, double target,
                                      double eps0, std::uint64_t seed);

  const levy::LevyMeasure& measure() const { return measure_; }
  int dim() const { return d_; }
  double jump_cut() const { return eps_; }
  double jump_rate() const { return rate_; }
  const Point& drift() const { return drift_; }
  const std::array<std::array<double, 3>, 3>& small_jump_cov() const { return cov_; }
  bool gaussian_substitute() const { return gaussian_; }
  double bias_bound() const { return bias_; }
  std::uint64_t seed() const { return seed_; }

  // End point of path `index` at time t.
  Point sample(double t, std::uint64_t index) const;
  // Positions of path `index` at the nondecreasing times in `times`
  // (one path, so increments are shared).
  std::vector<Point> sample_at(const std::vector<double>& times, std::uint64_t index) const;

 private:
  struct AtomTable {
    double mass = 0.0;        // int_eps^inf density
    std::vector<double> r;    // log-spaced nodes from eps
    std::vector<double> cum;  // cumulative mass at nodes
    std::vector<double> beta; // local power exponent per bin
    double tail_beta = -2.0;  // exponent beyond the last node
    bool pareto = false;      // exact inverse for pure power laws
    double pareto_sigma = 1.0;
  };
  double draw_radius(const AtomTable& tab, double u) const;

  levy::LevyMeasure measure_;
  int d_ = 1;
  double eps_ = 1e-3;
  std::uint64_t seed_ = 0;
  double rate_ = 0.0;
  Point drift_{};
  std::array<std::array<double, 3>, 3> cov_{};
  std::array<std::array<double, 3>, 3> chol_{};
  bool gaussian_ = false;
  double bias_ = 0.0;
  std::vector<AtomTable> tables_;
  std::vector<double> atom_cdf_;
};

// n_paths end points at time t; path i uses the counter stream (seed, i).
std::vector<Point> sample_paths(const PathSampler& sampler, double t, std::size_t n_paths);

struct MomentAuditSpec {
  double alpha2 = 0.5;
  std::vector<double> t_grid;
  std::size_t n_paths = 100000;
  double slope_tol = 0.05;
  // Jump cut at time t is eps * max(1, a(t)) when a scaling triple is given.
  double eps = 1e-3;
  // Optional closed form of E|Z_t|^alpha2; estimates must lie within 3 SE.
  std::function<double(double)> reference;
};

// MC estimate of E|Z_t|^alpha2 / (1 + t) with 95% intervals; PASS when the
// upper envelope has log-t slope <= slope_tol.
CheckReport moment_audit(const levy::LevyMeasure& measure, const levy::ScalingTriple* kappa,
                         const MomentAuditSpec& spec, std::uint64_t seed);

// 64 equiprobable bins of the torus law from density(); samples are wrapped
// onto [-L/2, L/2). The reference density is reflected, since density()
// returns the law of -Z_t.
CheckReport chi_square_check(const PathSampler& sampler, double t, std::size_t n_paths, double L,
                             int n_grid, int bins = 64);

// Kolmogorov-Smirnov distance of end points (first coordinate) to a CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace nlc::mc
