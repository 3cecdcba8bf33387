#pragma once
// Frozen reference values, computed once in extended precision and pinned
// here. Do not regenerate from the library under test.

#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

// psi(xi) = -C_sigma (2 pi |xi|)^sigma for dy / |y|^{1 + sigma} in d = 1.
inline constexpr double kStableC05 = 5.013256549262001;
inline constexpr double kStableC15 = 3.342171032841334;
inline constexpr double kStableC1 = std::numbers::pi;

inline constexpr double kSqrt2Pi = 2.5066282746310005;

// Cauchy operator (dy / y^2) applied to exp(-x^2) at x = -7.5, -6.5, ..., -0.5.
// Free space: L f = -pi H(f') = -2 sqrt(pi) (1 - 2 x D(x)), D the Dawson
// function. The operator is symmetric, so x and -x agree.
inline constexpr std::array<double, 8> kCauchyGaussX = {-7.5, -6.5, -5.5, -4.5,
                                                        -3.5, -2.5, -1.5, -0.5};
inline constexpr std::array<double, 8> kCauchyGaussFree = {
    0.03239044085855873,  0.043537304399271094, 0.061771985610674995, 0.094994635926866686,
    0.16785546187343715,  0.40914832248904044,  1.0094025893411172,   -2.0403198970058924};
// Same operator on the L = 32 periodization: image sum of the closed form.
inline constexpr double kCauchyGaussPeriod = 32.0;
inline constexpr std::array<double, 8> kCauchyGaussPeriodic = {
    0.038768814095860081, 0.04973531569203432, 0.067821732328163835, 0.10092507185822122,
    0.1736931124186697,   0.4149178867716002,  1.0151274608945747,   -2.0346171657940159};

// B integral for stable 1/2 with alpha1 = 1, alpha2 = 1/4:
// 2 / (alpha1 - sigma) + 2 / (sigma - alpha2).
inline constexpr double kStableHalfB = 12.0;
// int_{|y| <= 1} y^2 dmu0 for the truncated stable 1/2 measure: 2 / (2 - sigma).
inline constexpr double kTruncatedHalfSecondMoment = 4.0 / 3.0;

inline double cauchy_density(double t, double x) {
  const double s = std::numbers::pi * t;
  return s / (std::numbers::pi * (s * s + x * x));
}

// Image sum of cauchy_density over period L (Poisson kernel on the circle).
inline double periodic_cauchy_density(double t, double x, double L) {
  const double u = 2.0 * std::numbers::pi * std::numbers::pi * t / L;
  return std::sinh(u) / (L * (std::cosh(u) - std::cos(2.0 * std::numbers::pi * x / L)));
}

inline double cauchy_cdf(double t, double x) {
  return 0.5 + std::atan(x / (std::numbers::pi * t)) / std::numbers::pi;
}

}  // namespace oracle
