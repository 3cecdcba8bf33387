#include "nlc/levy/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlc/core/error.hpp"

namespace nlc::levy {

ScalingTriple ScalingTriple::power(double sigma, double coefficient) {
  if (!(sigma > 0.0)) throw DomainError("scaling exponent must be positive");
  if (!(coefficient > 0.0)) throw DomainError("scaling coefficient must be positive");
  ScalingTriple s;
  s.kappa_ = [=](double r) { return coefficient == 1.0 ? std::pow(r, sigma) : coefficient * std::pow(r, sigma); };
  s.l_ = [=](double e) { return std::pow(e, sigma); };
  s.a_closed_ = [=](double t) { return std::pow(t / coefficient, 1.0 / sigma); };
  s.gamma_closed_ = [=](double t) { return std::pow(t, 1.0 / sigma); };
  std::ostringstream os;
  os.precision(17);
  os << "power(" << sigma << "," << coefficient << ")";
  s.tag_ = os.str();
  s.power_ = true;
  s.exponent_ = sigma;
  return s;
}

ScalingTriple::Envelope ScalingTriple::build(const Fn& f, double lo, double hi, int points) {
  Envelope e;
  e.r.resize(points);
  e.value.resize(points);
  const double step = std::log(hi / lo) / (points - 1);
  double run = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    e.r[i] = lo * std::exp(step * i);
    run = std::max(run, f(e.r[i]));
    e.value[i] = run;
  }
  return e;
}

double ScalingTriple::invert(const Envelope& env, const Fn& f, double t) {
  if (!(t > 0.0)) throw DomainError("generalised inverse needs a positive argument");
  auto it = std::lower_bound(env.value.begin(), env.value.end(), t);
  if (it == env.value.end() || it == env.value.begin())
    throw NumericalGuard("generalised inverse argument outside the tabulated range");
  const std::size_t i = static_cast<std::size_t>(it - env.value.begin());
  const double floor_val = env.value[i - 1];
  double lo = env.r[i - 1], hi = env.r[i];
  // Bisection on max(f, running max to the left), which is monotone.
  for (int k = 0; k < 200 && hi - lo > 1e-16 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (std::max(f(mid), floor_val) >= t) hi = mid; else lo = mid;
  }
  return hi;
}

ScalingTriple ScalingTriple::tabulated(Fn kappa, Fn l, std::string tag, double r_lo, double r_hi,
                                       int points) {
  ScalingTriple s;
  s.kappa_ = std::move(kappa);
  s.l_ = std::move(l);
  s.kappa_env_ = build(s.kappa_, r_lo, r_hi, points);
  s.l_env_ = build(s.l_, r_lo, r_hi, points);
  s.tag_ = std::move(tag);
  return s;
}

ScalingTriple ScalingTriple::with_piecewise_factor(Fn kappa, double C, double e_small, double e_large,
                                                   std::string tag) {
  if (!(C > 0.0) || !(e_small > 0.0) || !(e_large > 0.0))
    throw DomainError("piecewise scaling factor needs positive constants");
  Fn l = [=](double e) { return e <= 1.0 ? C * std::pow(e, e_small) : C * std::pow(e, e_large); };
  ScalingTriple s = tabulated(std::move(kappa), l, std::move(tag));
  s.gamma_closed_ = [=](double t) {
    return t <= C ? std::pow(t / C, 1.0 / e_small) : std::pow(t / C, 1.0 / e_large);
  };
  return s;
}

double ScalingTriple::a(double t) const {
  if (a_closed_) return a_closed_(t);
  return invert(kappa_env_, kappa_, t);
}

double ScalingTriple::gamma(double t) const {
  if (gamma_closed_) return gamma_closed_(t);
  return invert(l_env_, l_, t);
}

}  // namespace nlc::levy
