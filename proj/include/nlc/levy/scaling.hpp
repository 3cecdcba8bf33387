#pragma once

#include <functional>
#include <string>
#include <vector>

namespace nlc::levy {

// Scaling function kappa with factor l (kappa(eps r) <= l(eps) kappa(r)) and
// their generalised inverses a(t) = inf{r : kappa(r) >= t},
// gamma(t) = inf{r : l(r) >= t}.
class ScalingTriple {
 public:
  using Fn = std::function<double(double)>;

  // kappa(r) = c r^sigma, l(eps) = eps^sigma.
  static ScalingTriple power(double sigma, double coefficient = 1.0);
  // Inverses by bisection on running-max envelopes tabulated on a log grid.
  static ScalingTriple tabulated(Fn kappa, Fn l, std::string tag, double r_lo = 1e-12,
                                 double r_hi = 1e12, int points = 2048);
  // Piecewise power factor l(eps) = C eps^{e_small} (eps <= 1), C eps^{e_large} (eps > 1).
  static ScalingTriple with_piecewise_factor(Fn kappa, double C, double e_small, double e_large,
                                             std::string tag);

  double kappa(double r) const { return kappa_(r); }
  double l(double eps) const { return l_(eps); }
  double a(double t) const;
  double gamma(double t) const;

  const std::string& tag() const { return tag_; }
  bool is_power() const { return power_; }
  double power_exponent() const { return exponent_; }

 private:
  struct Envelope {
    std::vector<double> r;
    std::vector<double> value;  // running max
  };
  static Envelope build(const Fn& f, double lo, double hi, int points);
  static double invert(const Envelope& env, const Fn& f, double t);

  Fn kappa_;
  Fn l_;
  Fn a_closed_;
  Fn gamma_closed_;
  Envelope kappa_env_;
  Envelope l_env_;
  std::string tag_;
  bool power_ = false;
  double exponent_ = 0.0;
};

}  // namespace nlc::levy
