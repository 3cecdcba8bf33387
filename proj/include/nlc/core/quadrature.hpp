#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nlc {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
  void append(const QuadRule& other);
};

// Gauss-Legendre nodes on [-1, 1]; order is one of 5, 10, 20.
const QuadRule& gauss_legendre(int order);

QuadRule linear_panels(double lo, double hi, int panels, int order);
// Panels uniform in log r; weights already include the Jacobian dr = r du.
QuadRule log_panels(double lo, double hi, int panels, int order);
// Log panels with a fixed density per decade (at least one panel).
QuadRule log_panels_per_decade(double lo, double hi, double per_decade, int order);

double integrate(const QuadRule& q, const std::function<double(double)>& f);

// Two-point log-log slope of a positive function between r0 and r1.
double log_slope(const std::function<double(double)>& f, double r0, double r1);

// Integral of a nonnegative, power-like f over [a, b] where a may be 0 and
// b may be +inf. The unresolved ends are closed analytically with the local
// power law; an exponent at or past -1 raises DivergentIntegral.
struct RadialIntegralOptions {
  double r_min = 1e-8;
  double r_max = 1e8;
  double per_decade = 4.0;
  int order = 10;
  double exponent_tol = 1e-3;
};
double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        const RadialIntegralOptions& opt = {});

// Pairwise summation keeps the result independent of how work is split.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace nlc
