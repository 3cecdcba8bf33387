#include "nlc/core/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "nlc/core/error.hpp"

namespace nlc {
namespace {

template <int N>
QuadRule expand_boost_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  QuadRule q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      q.x.push_back(0.0);
      q.w.push_back(w[i]);
    } else {
      q.x.push_back(-a[i]);
      q.w.push_back(w[i]);
      q.x.push_back(a[i]);
      q.w.push_back(w[i]);
    }
  }
  return q;
}

}  // namespace

void QuadRule::append(const QuadRule& other) {
  x.insert(x.end(), other.x.begin(), other.x.end());
  w.insert(w.end(), other.w.begin(), other.w.end());
}

const QuadRule& gauss_legendre(int order) {
  static const QuadRule g5 = expand_boost_rule<5>();
  static const QuadRule g10 = expand_boost_rule<10>();
  static const QuadRule g20 = expand_boost_rule<20>();
  switch (order) {
    case 5: return g5;
    case 10: return g10;
    case 20: return g20;
    default: throw DomainError("unsupported Gauss-Legendre order");
  }
}

QuadRule linear_panels(double lo, double hi, int panels, int order) {
  const auto& g = gauss_legendre(order);
  QuadRule q;
  const double step = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * step;
    for (std::size_t i = 0; i < g.size(); ++i) {
      q.x.push_back(c + 0.5 * step * g.x[i]);
      q.w.push_back(0.5 * step * g.w[i]);
    }
  }
  return q;
}

QuadRule log_panels(double lo, double hi, int panels, int order) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log panels need 0 < lo < hi");
  const auto& g = gauss_legendre(order);
  QuadRule q;
  const double ulo = std::log(lo);
  const double step = (std::log(hi) - ulo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = ulo + (p + 0.5) * step;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = std::exp(c + 0.5 * step * g.x[i]);
      q.x.push_back(r);
      q.w.push_back(0.5 * step * g.w[i] * r);
    }
  }
  return q;
}

QuadRule log_panels_per_decade(double lo, double hi, double per_decade, int order) {
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)));
  return log_panels(lo, hi, panels, order);
}

double integrate(const QuadRule& q, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.w[i] * f(q.x[i]);
  return acc;
}

double log_slope(const std::function<double(double)>& f, double r0, double r1) {
  const double f0 = f(r0), f1 = f(r1);
  if (!(f0 > 0.0) || !(f1 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(f1 / f0) / std::log(r1 / r0);
}

double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        const RadialIntegralOptions& opt) {
  const bool open_lo = a <= 0.0;
  const bool open_hi = std::isinf(b);
  const double lo = open_lo ? std::min(opt.r_min, 0.5 * b) : a;
  const double hi = open_hi ? std::max(opt.r_max, 2.0 * lo) : b;
  if (!(hi > lo)) return 0.0;
  double total = integrate(log_panels_per_decade(lo, hi, opt.per_decade, opt.order), f);
  if (open_lo) {
    const double f0 = f(lo);
    if (f0 > 0.0) {
      const double beta = log_slope(f, lo, 10.0 * lo);
      if (!(beta > -1.0 + opt.exponent_tol)) throw DivergentIntegral("origin", beta);
      total += f0 * lo / (beta + 1.0);
    }
  }
  if (open_hi) {
    const double f1 = f(hi);
    if (f1 > 0.0) {
      const double beta = log_slope(f, 0.1 * hi, hi);
      if (!(beta < -1.0 - opt.exponent_tol)) throw DivergentIntegral("infinity", beta);
      total += -f1 * hi / (beta + 1.0);
    }
  }
  return total;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace nlc
