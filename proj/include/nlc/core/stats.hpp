#pragma once

#include <span>
#include <vector>

namespace nlc {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct SampleSummary {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
};
SampleSummary summarize(std::span<const double> v);

// Upper tail of the chi-square distribution.
double chi_square_pvalue(double statistic, double dof);

// Kolmogorov distribution tail Q(sqrt(n) D) with the usual small-n correction.
double ks_pvalue(double statistic, std::size_t n);

}  // namespace nlc
