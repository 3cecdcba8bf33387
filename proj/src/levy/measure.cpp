#include "nlc/levy/measure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/quadrature.hpp"

namespace nlc::levy {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kClosurePeriods = 32;

RadialIntegralOptions options_around(double r_ref) {
  RadialIntegralOptions o;
  o.r_min = std::min(1e-8, 1e-4 * r_ref);
  o.r_max = std::max(1e8, 1e4 * r_ref);
  return o;
}

// int_a^b f(r) trig(omega r) dr. For b = inf the integral runs to a period
// boundary e past kClosurePeriods periods and the remainder is closed with
// the local power-law asymptotic series (sin(omega e) = 0 there).
double oscillatory(const std::function<double(double)>& f, const std::function<double(double)>& slope,
                   double omega, double a, double b, bool use_sin) {
  const double period = kTwoPi / omega;
  const bool open = std::isinf(b);
  const double end = open ? (std::floor(a / period) + kClosurePeriods + 1) * period : b;
  const auto& g = gauss_legendre(10);
  double acc = 0.0;
  double x = a;
  while (x < end) {
    const double w = std::min({0.5 * period, std::max(0.5 * x, 1e-3 * period), end - x});
    const double c = x + 0.5 * w;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = c + 0.5 * w * g.x[i];
      const double t = use_sin ? std::sin(omega * r) : std::cos(omega * r);
      acc += 0.5 * w * g.w[i] * f(r) * t;
    }
    x += w;
  }
  if (open) {
    const double fe = f(end);
    if (fe != 0.0) {
      const double s = slope(end);
      const double d1 = fe * s / end;
      const double d2 = d1 * (s - 1.0) / end;
      const double d3 = d2 * (s - 2.0) / end;
      const double w2 = omega * omega;
      acc += use_sin ? fe / omega - d2 / (w2 * omega) : -d1 / w2 + d3 / (w2 * w2);
    }
  }
  return acc;
}

}  // namespace

std::string to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::StableRadial: return "stable";
    case MeasureKind::BernsteinSubordinated: return "bernstein";
    case MeasureKind::RadialAngularDensity: return "radial_density";
    case MeasureKind::Difference: return "difference";
  }
  return "unknown";
}

std::vector<AngularAtom> sphere_design(int d) {
  std::vector<AngularAtom> atoms;
  if (d == 1) {
    atoms.push_back({{1.0, 0.0, 0.0}, 1.0});
    atoms.push_back({{-1.0, 0.0, 0.0}, 1.0});
  } else if (d == 2) {
    const double w = kTwoPi / 4.0;
    atoms.push_back({{1.0, 0.0, 0.0}, w});
    atoms.push_back({{-1.0, 0.0, 0.0}, w});
    atoms.push_back({{0.0, 1.0, 0.0}, w});
    atoms.push_back({{0.0, -1.0, 0.0}, w});
  } else if (d == 3) {
    const double w = 4.0 * std::numbers::pi / 26.0;
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j)
        for (int k = -1; k <= 1; ++k) {
          if (i == 0 && j == 0 && k == 0) continue;
          const double n = std::sqrt(static_cast<double>(i * i + j * j + k * k));
          atoms.push_back({{i / n, j / n, k / n}, w});
        }
  } else {
    throw DomainError("sphere design available for d = 1, 2, 3");
  }
  return atoms;
}

double compensator(double sigma, double r) {
  if (sigma < 1.0) return 0.0;
  if (sigma == 1.0) return r <= 1.0 ? 1.0 : 0.0;
  return 1.0;
}

LevyMeasure LevyMeasure::stable(int d, double sigma, double coefficient,
                                std::vector<AngularAtom> atoms) {
  return radial(MeasureKind::StableRadial, d, sigma, std::make_shared<PowerProfile>(sigma, coefficient),
                std::move(atoms));
}

LevyMeasure LevyMeasure::radial(MeasureKind kind, int d, double sigma,
                                std::shared_ptr<const RadialProfile> profile,
                                std::vector<AngularAtom> atoms,
                                std::shared_ptr<const AngularFactor> factor, std::string factor_tag) {
  if (d < 1 || d > 3) throw DomainError("measure dimension must be 1, 2 or 3");
  if (!(sigma > 0.0 && sigma < 2.0)) throw DomainError("order must lie in (0, 2)");
  if (!profile) throw DomainError("measure needs a radial profile");
  LevyMeasure m;
  m.kind_ = kind;
  m.d_ = d;
  m.sigma_ = sigma;
  m.atoms_ = atoms.empty() ? sphere_design(d) : std::move(atoms);
  for (auto& a : m.atoms_) {
    double n2 = 0.0;
    for (int k = 0; k < d; ++k) n2 += a.direction[k] * a.direction[k];
    for (int k = d; k < 3; ++k)
      if (a.direction[k] != 0.0) throw DomainError("atom direction has components beyond d");
    if (std::abs(n2 - 1.0) > 1e-9) throw DomainError("atom directions must be unit vectors");
    if (!(a.weight > 0.0)) throw DomainError("atom weights must be positive");
  }
  m.profile_ = std::move(profile);
  m.factor_ = std::move(factor);
  m.factor_tag_ = std::move(factor_tag);
  if (sigma == 1.0 && !m.angular_symmetric())
    throw DomainError("order-one measures must be symmetric (cancellation condition)");
  return m;
}

LevyMeasure LevyMeasure::difference(const LevyMeasure& plus, const LevyMeasure& minus) {
  if (plus.dim() != minus.dim()) throw DomainError("difference of measures in different dimensions");
  LevyMeasure m;
  m.kind_ = MeasureKind::Difference;
  m.d_ = plus.dim();
  m.sigma_ = std::max(plus.sigma(), minus.sigma());
  m.plus_ = std::make_shared<const LevyMeasure>(plus);
  m.minus_ = std::make_shared<const LevyMeasure>(minus);
  return m;
}

double LevyMeasure::density(double r, std::size_t atom) const {
  if (is_difference()) throw DomainError("density of a signed measure is not defined per atom");
  if (r > cutoff_) return 0.0;
  const double x = scale_ * r;
  double v = mult_ * scale_ * profile_->value(x);
  if (factor_) v *= (*factor_)(x, atom);
  return v;
}

double LevyMeasure::density_log_slope(double r, std::size_t atom) const {
  double s = profile_->log_slope(scale_ * r);
  if (factor_) {
    const double h = 1e-4, x = scale_ * r;
    const double lo = (*factor_)(x * std::exp(-h), atom), hi = (*factor_)(x * std::exp(h), atom);
    if (lo > 0.0 && hi > 0.0) s += std::log(hi / lo) / (2.0 * h);
  }
  return s;
}

LevyMeasure LevyMeasure::rescaled(double R, double prefactor) const {
  if (!(R > 0.0)) throw DomainError("rescaling radius must be positive");
  LevyMeasure m = *this;
  if (is_difference()) {
    m.plus_ = std::make_shared<const LevyMeasure>(plus_->rescaled(R, prefactor));
    m.minus_ = std::make_shared<const LevyMeasure>(minus_->rescaled(R, prefactor));
    return m;
  }
  // A power law absorbs the change of variables into its coefficient, so a
  // self-similar measure maps to itself when prefactor == R^sigma.
  const auto* power = dynamic_cast<const PowerProfile*>(profile_.get());
  if (power && !factor_ && scale_ == 1.0) {
    m.mult_ = mult_ * (prefactor / std::pow(R, power->sigma()));
  } else {
    m.scale_ = scale_ * R;
    m.mult_ = mult_ * prefactor;
  }
  m.cutoff_ = cutoff_ / R;
  return m;
}

LevyMeasure LevyMeasure::truncated(double cutoff) const {
  LevyMeasure m = *this;
  if (is_difference()) {
    m.plus_ = std::make_shared<const LevyMeasure>(plus_->truncated(cutoff));
    m.minus_ = std::make_shared<const LevyMeasure>(minus_->truncated(cutoff));
    return m;
  }
  m.cutoff_ = std::min(cutoff_, cutoff);
  return m;
}

LevyMeasure LevyMeasure::with_coefficient(double factor) const {
  LevyMeasure m = *this;
  if (is_difference()) {
    m.plus_ = std::make_shared<const LevyMeasure>(plus_->with_coefficient(factor));
    m.minus_ = std::make_shared<const LevyMeasure>(minus_->with_coefficient(factor));
    return m;
  }
  m.mult_ *= factor;
  return m;
}

cplx LevyMeasure::atom_exponent(std::size_t atom, double u) const {
  if (u == 0.0) return {0.0, 0.0};
  if (u < 0.0) return std::conj(atom_exponent(atom, -u));
  const double omega = kTwoPi * u;
  const double r1 = 1.0 / omega;
  const double cut = cutoff_;
  const auto opt = options_around(r1);
  auto f = [&](double r) { return density(r, atom); };
  auto slope = [&](double r) { return density_log_slope(r, atom); };
  const double near_end = std::min(r1, cut);

  // Real part: -int 2 sin^2(omega r / 2) f.
  double re = -integrate_radial(
      [&](double r) {
        const double s = std::sin(0.5 * omega * r);
        return 2.0 * s * s * f(r);
      },
      0.0, near_end, opt);
  double im = 0.0;
  if (sigma_ < 1.0) {
    im += integrate_radial([&](double r) { return std::sin(omega * r) * f(r); }, 0.0, near_end, opt);
  } else {
    const double comp_end = sigma_ == 1.0 ? std::min(near_end, 1.0) : near_end;
    im -= integrate_radial([&](double r) { return (omega * r - std::sin(omega * r)) * f(r); }, 0.0,
                           comp_end, opt);
    if (comp_end < near_end)
      im += integrate_radial([&](double r) { return std::sin(omega * r) * f(r); }, comp_end, near_end,
                             opt);
  }

  if (r1 < cut) {
    re += oscillatory(f, slope, omega, r1, cut, false);
    re -= integrate_radial(f, r1, cut, opt);
    im += oscillatory(f, slope, omega, r1, cut, true);
    if (sigma_ > 1.0) {
      im -= omega * integrate_radial([&](double r) { return r * f(r); }, r1, cut, opt);
    } else if (sigma_ == 1.0 && r1 < 1.0) {
      im -= omega * integrate_radial([&](double r) { return r * f(r); }, r1, std::min(1.0, cut), opt);
    }
  }
  return {re, im};
}

cplx LevyMeasure::symbol(const Vec& xi) const {
  if (is_difference()) return plus_->symbol(xi) - minus_->symbol(xi);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& w = atoms_[i].direction;
    const double u = xi[0] * w[0] + xi[1] * w[1] + xi[2] * w[2];
    acc += atoms_[i].weight * atom_exponent(i, u);
  }
  return acc;
}

double LevyMeasure::atom_moment(std::size_t atom, const std::function<double(double)>& g, double a,
                                double b) const {
  const double hi = std::min(b, cutoff_);
  if (!(hi > a)) return 0.0;
  return integrate_radial([&](double r) { return g(r) * density(r, atom); }, a, hi,
                          options_around(a > 0.0 ? a : 1.0));
}

double LevyMeasure::radial_moment(const std::function<double(double)>& g, double a, double b) const {
  // For signed measures this is the moment of the variation bound plus + minus.
  if (is_difference()) return plus_->radial_moment(g, a, b) + minus_->radial_moment(g, a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) acc += atoms_[i].weight * atom_moment(i, g, a, b);
  return acc;
}

double LevyMeasure::tail_mass(double eps) const {
  return radial_moment([](double) { return 1.0; }, eps, std::numeric_limits<double>::infinity());
}

bool LevyMeasure::angular_symmetric(double tol) const {
  if (is_difference()) return plus_->angular_symmetric(tol) && minus_->angular_symmetric(tol);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < atoms_.size() && !found; ++j) {
      const auto& a = atoms_[i].direction;
      const auto& b = atoms_[j].direction;
      if (std::abs(a[0] + b[0]) + std::abs(a[1] + b[1]) + std::abs(a[2] + b[2]) > tol) continue;
      if (std::abs(atoms_[i].weight - atoms_[j].weight) > tol * atoms_[i].weight) continue;
      bool same = true;
      if (factor_) {
        for (double r = 1e-6; r < 1e6 && same; r *= 10.0) {
          const double fi = (*factor_)(r, i), fj = (*factor_)(r, j);
          same = std::abs(fi - fj) <= tol * std::max(std::abs(fi), 1.0);
        }
      }
      found = same;
    }
    if (!found) return false;
  }
  return true;
}

std::string LevyMeasure::fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  if (is_difference()) {
    os << "diff[" << plus_->fingerprint() << "|" << minus_->fingerprint() << "]";
    return os.str();
  }
  os << to_string(kind_) << ";d=" << d_ << ";sigma=" << sigma_ << ";" << profile_->fingerprint()
     << ";factor=" << factor_tag_ << ";scale=" << scale_ << ";mult=" << mult_ << ";cut=" << cutoff_;
  for (const auto& a : atoms_)
    os << ";(" << a.direction[0] << "," << a.direction[1] << "," << a.direction[2] << "," << a.weight << ")";
  return os.str();
}

}  // namespace nlc::levy
