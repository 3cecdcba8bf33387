#pragma once

#include <memory>
#include <string>
#include <vector>

namespace nlc::levy {

// Radial jump density A(r) per unit angular weight: the measure of
// {r w : r in dr, w in dS} is A(r) a(r, w) dr S(dw).
class RadialProfile {
 public:
  virtual ~RadialProfile() = default;
  virtual double value(double r) const = 0;
  // d log A / d log r, used for tail closures and oscillatory remainders.
  virtual double log_slope(double r) const;
  virtual std::string fingerprint() const = 0;
};

// A(r) = c r^(-1-sigma).
class PowerProfile final : public RadialProfile {
 public:
  PowerProfile(double sigma, double coefficient);
  double value(double r) const override;
  double log_slope(double) const override { return -1.0 - sigma_; }
  std::string fingerprint() const override;
  double sigma() const { return sigma_; }
  double coefficient() const { return coef_; }

 private:
  double sigma_;
  double coef_;
};

// Natural cubic spline of log A against log r on a uniform log grid, with
// power-law continuation outside the table.
class SplineProfile final : public RadialProfile {
 public:
  SplineProfile(double log_r0, double log_step, std::vector<double> log_values, std::string tag);
  double value(double r) const override;
  double log_slope(double r) const override;
  std::string fingerprint() const override { return tag_; }

  double r_min() const;
  double r_max() const;

 private:
  double eval_log(double u, double* slope) const;

  double u0_;
  double du_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives
  std::string tag_;
};

std::shared_ptr<const SplineProfile> tabulate_profile(
    const std::vector<double>& radii, const std::vector<double>& values, std::string tag);

}  // namespace nlc::levy
