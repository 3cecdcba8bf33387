#pragma once

#include <map>
#include <string>

#include "nlc/core/grid.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"
#include "nlc/symbol/symbol.hpp"

namespace nlc::solver {

// du/dt = L^pi u - lambda u + f on (0, T], u(0) = g, on the periodic box.
struct CauchyProblem {
  levy::LevyMeasure pi;
  levy::LevyMeasure mu;  // comparator for the norms
  levy::ScalingTriple kappa;
  double lambda = 0.0;
  double T = 1.0;
  FieldSeries f;  // empty slices mean f = 0
  Field g;
  double s = 0.0;
  double p = 2.0;

  CauchyProblem(levy::LevyMeasure pi_, levy::LevyMeasure mu_, levy::ScalingTriple kappa_)
      : pi(std::move(pi_)), mu(std::move(mu_)), kappa(std::move(kappa_)) {}
  const GridSpec& grid() const { return g.grid; }
};

struct Solution {
  FieldSeries u;
  double time_step = 0.0;
  double rho_lambda = 0.0;
  std::map<std::string, double> diagnostics;
};

// phi_1(z) = (e^z - 1) / z and phi_2(z) = (e^z - 1 - z) / z^2, with a
// Taylor branch for |z| < kPhiSeriesRadius.
constexpr double kPhiSeriesRadius = 0.5;
cplx phi1(cplx z);
cplx phi2(cplx z);

// (1 / lambda) min T, and T when lambda = 0.
double rho_lambda(double lambda, double T);

// Exponential integrator, exact per mode for f piecewise linear in time.
Solution solve(const CauchyProblem& problem, int n_steps);

// e^{(psi - lambda) t} g.
Field apply_I_lambda(const CauchyProblem& problem, const Field& g, double t);
// Duhamel part with g = 0; t need not be a slice time of f.
Field apply_R_lambda(const CauchyProblem& problem, const FieldSeries& f, double t);

// (1 - psi_mu)^{-1} g.
Field resolvent(const levy::LevyMeasure& mu, const Field& g);
// max |(I - L^mu) resolvent(g) - g|.
double resolvent_roundtrip_error(const levy::LevyMeasure& mu, const Field& g);

// L^pi f through the symbol.
Field apply_generator(const levy::LevyMeasure& pi, const Field& f);

}  // namespace nlc::solver
