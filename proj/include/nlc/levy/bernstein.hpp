#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nlc/core/grid.hpp"
#include "nlc/core/report.hpp"
#include "nlc/levy/measure.hpp"
#include "nlc/levy/scaling.hpp"

namespace nlc::levy {

// Bernstein function with no drift and no killing, analytic off (-inf, 0].
class BernsteinFunction {
 public:
  virtual ~BernsteinFunction() = default;
  virtual double value(double r) const = 0;
  virtual cplx derivative(cplx z) const = 0;
  virtual std::string name() const = 0;
  // Closed-form Levy density of the subordinator, when one is known.
  virtual bool has_closed_levy_density() const { return false; }
  virtual double levy_density(double) const { return 0.0; }
};

// sum_i c_i r^{a_i}, a_i in (0, 1).
std::shared_ptr<BernsteinFunction> power_sum(std::vector<double> exponents,
                                             std::vector<double> coefficients);
// (r + r^a)^b.
std::shared_ptr<BernsteinFunction> shifted_power(double a, double b);
// r^a (ln(1 + r))^b with b < 1 - a.
std::shared_ptr<BernsteinFunction> power_log(double a, double b);
// (ln cosh sqrt(r))^a.
std::shared_ptr<BernsteinFunction> log_cosh(double a);

// Levy density of the subordinator by inverse Laplace transform of phi'
// (fixed Talbot contour): t Lambda(t) = L^{-1}[phi'](t).
double subordinator_density(const BernsteinFunction& phi, double t, int talbot_terms = 24);

struct BernsteinAudit {
  double delta1 = 0.0;     // lower scaling exponent of phi
  double delta2 = 0.0;     // upper scaling exponent of phi
  double N_phi = 0.0;      // constant in the two-sided ratio bound
  double N_kernel = 0.0;   // constant in the kernel sandwich
  double l_constant = 0.0; // C in l(eps) = C eps^{2 delta}
  CheckReport ratio_report;   // H(ii)
  CheckReport kernel_report;  // H(i)
};

struct BernsteinModel {
  std::shared_ptr<const BernsteinFunction> phi;
  LevyMeasure measure;
  ScalingTriple scaling;
  BernsteinAudit audit;
};

// j(r) = int (4 pi t)^{-d/2} exp(-r^2 / 4t) Lambda(dt), tabulated and splined.
// Throws DomainError when the fitted upper exponent reaches 1.
BernsteinModel bernstein_measure(std::shared_ptr<const BernsteinFunction> phi, int d);

// Same, for a discrete subordinator law given as atoms (t_i, mass_i).
BernsteinModel bernstein_measure_from_atoms(const std::vector<double>& times,
                                            const std::vector<double>& masses, int d,
                                            std::string tag);

// Log-log slope fit of the ratio bound N^{-1}(R/r)^{d1} <= phi(R)/phi(r) <= N (R/r)^{d2}.
BernsteinAudit audit_bernstein_function(const BernsteinFunction& phi);

// G: rho0 <= a <= 1 and int |xi.w|^2 rho0 dS >= c over unit xi.
CheckReport check_angular_nondegeneracy(const LevyMeasure& m, double rho0, double c);

}  // namespace nlc::levy
