#include "nlc/levy/radial_profile.hpp"

#include <cmath>
#include <sstream>

#include "nlc/core/error.hpp"

namespace nlc::levy {

double RadialProfile::log_slope(double r) const {
  const double h = 1e-4;
  const double lo = value(r * std::exp(-h)), hi = value(r * std::exp(h));
  if (!(lo > 0.0) || !(hi > 0.0)) return 0.0;
  return std::log(hi / lo) / (2.0 * h);
}

PowerProfile::PowerProfile(double sigma, double coefficient) : sigma_(sigma), coef_(coefficient) {
  if (!(sigma > 0.0 && sigma < 2.0)) throw DomainError("stable order must lie in (0, 2)");
  if (!(coefficient > 0.0)) throw DomainError("profile coefficient must be positive");
}

double PowerProfile::value(double r) const { return coef_ * std::pow(r, -1.0 - sigma_); }

std::string PowerProfile::fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  os << "power(" << sigma_ << "," << coef_ << ")";
  return os.str();
}

SplineProfile::SplineProfile(double log_r0, double log_step, std::vector<double> log_values,
                             std::string tag)
    : u0_(log_r0), du_(log_step), y_(std::move(log_values)), tag_(std::move(tag)) {
  const std::size_t n = y_.size();
  if (n < 4) throw DomainError("spline profile needs at least 4 nodes");
  // Natural spline on a uniform grid: tridiagonal system with (1, 4, 1).
  m_.assign(n, 0.0);
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (du_ * du_);
  std::vector<double> cp(n, 0.0), dp(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double denom = 4.0 - (i > 1 ? cp[i - 1] : 0.0);
    cp[i] = 1.0 / denom;
    dp[i] = (d[i] - (i > 1 ? dp[i - 1] : 0.0)) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = dp[i] - cp[i] * m_[i + 1];
    if (i == 1) break;
  }
}

double SplineProfile::r_min() const { return std::exp(u0_); }
double SplineProfile::r_max() const { return std::exp(u0_ + du_ * (y_.size() - 1)); }

double SplineProfile::eval_log(double u, double* slope) const {
  const std::size_t n = y_.size();
  const double umax = u0_ + du_ * (n - 1);
  if (u <= u0_) {
    const double s = (y_[1] - y_[0]) / du_ - du_ * (2.0 * m_[0] + m_[1]) / 6.0;
    if (slope) *slope = s;
    return y_[0] + s * (u - u0_);
  }
  if (u >= umax) {
    const double s = (y_[n - 1] - y_[n - 2]) / du_ + du_ * (m_[n - 2] + 2.0 * m_[n - 1]) / 6.0;
    if (slope) *slope = s;
    return y_[n - 1] + s * (u - umax);
  }
  std::size_t i = static_cast<std::size_t>((u - u0_) / du_);
  if (i >= n - 1) i = n - 2;
  const double t = (u - (u0_ + du_ * i)) / du_;
  const double a = 1.0 - t, b = t;
  const double h2 = du_ * du_;
  const double v = a * y_[i] + b * y_[i + 1] +
                   ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h2 / 6.0;
  if (slope) {
    *slope = (y_[i + 1] - y_[i]) / du_ +
             du_ * (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) / 6.0;
  }
  return v;
}

double SplineProfile::value(double r) const { return std::exp(eval_log(std::log(r), nullptr)); }

double SplineProfile::log_slope(double r) const {
  double s = 0.0;
  eval_log(std::log(r), &s);
  return s;
}

std::shared_ptr<const SplineProfile> tabulate_profile(const std::vector<double>& radii,
                                                      const std::vector<double>& values,
                                                      std::string tag) {
  if (radii.size() != values.size() || radii.size() < 4)
    throw DomainError("profile table needs matching radii/values (>= 4 rows)");
  const double u0 = std::log(radii.front());
  const double du = (std::log(radii.back()) - u0) / (radii.size() - 1);
  std::vector<double> ly(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("profile table values must be positive");
    const double expected = u0 + du * i;
    if (std::abs(std::log(radii[i]) - expected) > 1e-6 * std::max(1.0, std::abs(du)))
      throw DomainError("profile table radii must be log-uniform");
    ly[i] = std::log(values[i]);
  }
  return std::make_shared<SplineProfile>(u0, du, std::move(ly), std::move(tag));
}

}  // namespace nlc::levy
