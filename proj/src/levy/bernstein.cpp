#include "nlc/levy/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlc/core/error.hpp"

namespace nlc::levy {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class PowerSum final : public BernsteinFunction {
 public:
  PowerSum(std::vector<double> e, std::vector<double> c) : e_(std::move(e)), c_(std::move(c)) {
    if (e_.empty() || e_.size() != c_.size()) throw DomainError("power sum needs matching exponents/coefficients");
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (!(e_[i] > 0.0 && e_[i] < 1.0)) throw DomainError("power sum exponents must lie in (0, 1)");
      if (!(c_[i] > 0.0)) throw DomainError("power sum coefficients must be positive");
    }
  }
  double value(double r) const override {
    double v = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) v += c_[i] * std::pow(r, e_[i]);
    return v;
  }
  cplx derivative(cplx z) const override {
    cplx v{0.0, 0.0};
    for (std::size_t i = 0; i < e_.size(); ++i) v += c_[i] * e_[i] * std::pow(z, e_[i] - 1.0);
    return v;
  }
  std::string name() const override {
    std::string s = "power_sum(";
    for (std::size_t i = 0; i < e_.size(); ++i) s += fmt(c_[i]) + "*r^" + fmt(e_[i]) + ";";
    return s + ")";
  }
  bool has_closed_levy_density() const override { return true; }
  double levy_density(double t) const override {
    double v = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i)
      v += c_[i] * e_[i] / std::tgamma(1.0 - e_[i]) * std::pow(t, -1.0 - e_[i]);
    return v;
  }

 private:
  std::vector<double> e_, c_;
};

class ShiftedPower final : public BernsteinFunction {
 public:
  ShiftedPower(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0))
      throw DomainError("(r + r^a)^b needs a, b in (0, 1)");
  }
  double value(double r) const override { return std::pow(r + std::pow(r, a_), b_); }
  cplx derivative(cplx z) const override {
    const cplx za = std::pow(z, a_);
    return b_ * std::pow(z + za, b_ - 1.0) * (1.0 + a_ * za / z);
  }
  std::string name() const override { return "shifted_power(" + fmt(a_) + "," + fmt(b_) + ")"; }

 private:
  double a_, b_;
};

class PowerLog final : public BernsteinFunction {
 public:
  PowerLog(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("r^a ln(1+r)^b needs a in (0, 1)");
    if (!(b >= 0.0 && b < 1.0 - a)) throw DomainError("r^a ln(1+r)^b needs 0 <= b < 1 - a");
  }
  double value(double r) const override { return std::pow(r, a_) * std::pow(std::log1p(r), b_); }
  cplx derivative(cplx z) const override {
    const cplx L = std::abs(z) < 1e-8 ? z - 0.5 * z * z : std::log(1.0 + z);
    return a_ * std::pow(z, a_ - 1.0) * std::pow(L, b_) +
           std::pow(z, a_) * b_ * std::pow(L, b_ - 1.0) / (1.0 + z);
  }
  std::string name() const override { return "power_log(" + fmt(a_) + "," + fmt(b_) + ")"; }

 private:
  double a_, b_;
};

cplx log_cosh(cplx w) {
  if (w.real() > 10.0) return w - std::log(2.0) + std::log(1.0 + std::exp(-2.0 * w));
  const cplx s = std::sinh(0.5 * w);
  const cplx e = 2.0 * s * s;
  if (std::abs(e) < 1e-5) return e - 0.5 * e * e + e * e * e / 3.0;
  return std::log(1.0 + e);
}

cplx tanh_stable(cplx w) {
  if (w.real() > 10.0) {
    const cplx e = std::exp(-2.0 * w);
    return (1.0 - e) / (1.0 + e);
  }
  return std::tanh(w);
}

class LogCosh final : public BernsteinFunction {
 public:
  explicit LogCosh(double a) : a_(a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("(ln cosh sqrt r)^a needs a in (0, 1]");
  }
  double value(double r) const override { return std::pow(log_cosh(cplx(std::sqrt(r), 0.0)).real(), a_); }
  cplx derivative(cplx z) const override {
    const cplx w = std::sqrt(z);
    const cplx ratio = std::abs(w) < 1e-6 ? cplx(0.5, 0.0) - w * w / 6.0 : tanh_stable(w) / (2.0 * w);
    return a_ * std::pow(log_cosh(w), a_ - 1.0) * ratio;
  }
  std::string name() const override { return "log_cosh(" + fmt(a_) + ")"; }

 private:
  double a_;
};

// Grid for the subordinator density: 20 nodes per decade in log t.
constexpr double kLogT0 = -30.0 * std::numbers::ln10;
constexpr double kLogT1 = 30.0 * std::numbers::ln10;
constexpr int kTPerDecade = 20;

// Profile table: 40 nodes per decade on [1e-12, 1e12].
constexpr double kLogR0 = -12.0 * std::numbers::ln10;
constexpr double kLogR1 = 12.0 * std::numbers::ln10;
constexpr int kRPerDecade = 40;

double heat(double t, double r, int d) {
  return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

// Trapezoid in log t over tabulated (t_k, weight_k), weight = Lambda(t) t du.
std::vector<double> kernel_table(const std::vector<double>& t, const std::vector<double>& wt, int d,
                                 const std::vector<double>& radii) {
  std::vector<double> j(radii.size(), 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (wt[k] == 0.0) continue;
      acc += heat(t[k], radii[i], d) * wt[k];
    }
    j[i] = acc;
  }
  return j;
}

std::vector<double> profile_radii() {
  const int n = static_cast<int>(std::lround((kLogR1 - kLogR0) / std::numbers::ln10 * kRPerDecade)) + 1;
  std::vector<double> r(n);
  const double du = (kLogR1 - kLogR0) / (n - 1);
  for (int i = 0; i < n; ++i) r[i] = std::exp(kLogR0 + du * i);
  return r;
}

double snap_order(double sigma) { return std::round(sigma * 1000.0) / 1000.0; }

}  // namespace

std::shared_ptr<BernsteinFunction> power_sum(std::vector<double> e, std::vector<double> c) {
  return std::make_shared<PowerSum>(std::move(e), std::move(c));
}
std::shared_ptr<BernsteinFunction> shifted_power(double a, double b) {
  return std::make_shared<ShiftedPower>(a, b);
}
std::shared_ptr<BernsteinFunction> power_log(double a, double b) { return std::make_shared<PowerLog>(a, b); }
std::shared_ptr<BernsteinFunction> log_cosh(double a) { return std::make_shared<LogCosh>(a); }

double subordinator_density(const BernsteinFunction& phi, double t, int M) {
  if (phi.has_closed_levy_density()) return phi.levy_density(t);
  const double r = 2.0 * M / (5.0 * t);
  double acc = 0.5 * (phi.derivative(cplx(r, 0.0)) * std::exp(r * t)).real();
  for (int k = 1; k < M; ++k) {
    const double th = k * kPi / M;
    const double cot = 1.0 / std::tan(th);
    const cplx s(r * th * cot, r * th);
    const double sig = th + (th * cot - 1.0) * cot;
    acc += (std::exp(t * s) * phi.derivative(s) * cplx(1.0, sig)).real();
  }
  return acc * r / M / t;
}

BernsteinAudit audit_bernstein_function(const BernsteinFunction& phi) {
  BernsteinAudit out;
  // Local log-slope s(r) of phi on [1e-12, 1e12].
  std::vector<double> lr, s;
  const double h = 1e-3;
  for (double u = -12.0; u <= 12.0 + 1e-9; u += 0.05) {
    const double r = std::pow(10.0, u);
    const double sl = std::log(phi.value(r * std::exp(h)) / phi.value(r * std::exp(-h))) / (2.0 * h);
    lr.push_back(std::log(r));
    s.push_back(sl);
  }
  // End behaviour: phi is closed-form, so the limiting slopes are read off
  // far outside the working range, where both power and logarithmic
  // corrections are negligible.
  auto slope_at = [&](double r) {
    return std::log(phi.value(r * std::exp(h)) / phi.value(r * std::exp(-h))) / (2.0 * h);
  };
  const double s0 = slope_at(1e-250), s_inf = slope_at(1e250);
  double lo = std::min(s0, s_inf), hi = std::max(s0, s_inf);
  for (double v : s) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Widen by 1e-3: any smaller d1 / larger d2 also satisfies the bound.
  out.delta1 = std::max(0.0, lo - 1e-3);
  out.delta2 = hi + 1e-3;

  CheckReport& rep = out.ratio_report;
  rep.lemma_id = "H(ii)";
  double N = 1.0;
  std::vector<double> grid;
  for (double u = -8.0; u <= 8.0 + 1e-9; u += 0.25) grid.push_back(std::pow(10.0, u));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t k = i + 1; k < grid.size(); ++k) {
      const double q = grid[k] / grid[i];
      const double ratio = phi.value(grid[k]) / phi.value(grid[i]);
      N = std::max({N, ratio / std::pow(q, out.delta2), std::pow(q, out.delta1) / ratio});
    }
  out.N_phi = N;
  rep.value = out.delta2;
  rep.bound = 1.0;
  rep.fitted_constants = {{"delta1", out.delta1}, {"delta2", out.delta2}, {"N", N},
                          {"slope_at_0", s0}, {"slope_at_inf", s_inf}};
  rep.require(out.delta1 > 0.0, "lower exponent delta1 > 0");
  rep.require(out.delta2 < 1.0, "upper exponent delta2 < 1");
  rep.require(std::isfinite(N), "finite ratio constant");
  return out;
}

namespace {

BernsteinModel finish_model(std::shared_ptr<const BernsteinFunction> phi, int d,
                            const std::vector<double>& radii, const std::vector<double>& j,
                            BernsteinAudit audit, const std::string& tag) {
  std::vector<double> A(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) A[i] = j[i] * std::pow(radii[i], d - 1);
  auto profile = tabulate_profile(radii, A, tag);

  // Order from the large-argument limit of phi: j(r) ~ phi(r^-2) r^-d near 0.
  const double sigma_raw = 2.0 * audit.ratio_report.fitted_constants.at("slope_at_inf");
  const double sigma = snap_order(sigma_raw);
  if (!(sigma > 0.0 && sigma < 2.0))
    throw DomainError("subordinated kernel has order " + fmt(sigma_raw) + " outside (0, 2)");

  BernsteinModel m{phi, LevyMeasure::radial(MeasureKind::BernsteinSubordinated, d, sigma, profile),
                   ScalingTriple::power(1.0), std::move(audit)};

  // H(i): N^{-1} phi(r^-2) r^-d <= j(r) <= N phi(r^-2) r^-d.
  CheckReport& kr = m.audit.kernel_report;
  kr.lemma_id = "H(i)";
  double Nk = 1.0;
  double worst_r = 1.0;
  for (double u = -6.0; u <= 6.0 + 1e-9; u += 0.05) {
    const double r = std::pow(10.0, u);
    const double jr = profile->value(r) / std::pow(r, d - 1);
    const double ref = phi->value(1.0 / (r * r)) * std::pow(r, -d);
    const double q = std::max(jr / ref, ref / jr);
    if (q > Nk) {
      Nk = q;
      worst_r = r;
    }
  }
  m.audit.N_kernel = Nk;
  kr.value = Nk;
  kr.worst_point = {worst_r};
  kr.fitted_constants = {{"N", Nk}};
  kr.require(std::isfinite(Nk), "finite kernel sandwich constant");

  auto kappa = [profile](double R) { return 1.0 / (profile->value(R) * R); };
  // C in l(eps) = C eps^{2 d1} (eps <= 1), C eps^{2 d2} (eps > 1), with a 5% margin.
  double C = 1.0;
  const double e1 = 2.0 * m.audit.delta1, e2 = 2.0 * m.audit.delta2;
  for (double ur = -6.0; ur <= 6.0 + 1e-9; ur += 0.125)
    for (double ue = -6.0; ue <= 6.0 + 1e-9; ue += 0.125) {
      const double r = std::pow(10.0, ur), eps = std::pow(10.0, ue);
      const double q = kappa(eps * r) / kappa(r) / std::pow(eps, eps <= 1.0 ? e1 : e2);
      C = std::max(C, q);
    }
  C *= 1.05;
  m.audit.l_constant = C;
  m.scaling = ScalingTriple::with_piecewise_factor(kappa, C, e1, e2, tag + ";kappa=1/(j R^d)");
  return m;
}

}  // namespace

BernsteinModel bernstein_measure(std::shared_ptr<const BernsteinFunction> phi, int d) {
  if (!phi) throw DomainError("bernstein_measure needs a Bernstein function");
  BernsteinAudit audit = audit_bernstein_function(*phi);
  if (!(audit.delta2 < 1.0))
    throw DomainError("Bernstein function rejected: fitted upper exponent " + fmt(audit.delta2) + " >= 1");
  if (!(audit.delta1 > 0.0))
    throw DomainError("Bernstein function rejected: fitted lower exponent is not positive");

  const int nt = static_cast<int>(std::lround((kLogT1 - kLogT0) / std::numbers::ln10 * kTPerDecade)) + 1;
  const double du = (kLogT1 - kLogT0) / (nt - 1);
  std::vector<double> t(nt), wt(nt);
  for (int k = 0; k < nt; ++k) {
    t[k] = std::exp(kLogT0 + du * k);
    const double lam = subordinator_density(*phi, t[k]);
    wt[k] = (std::isfinite(lam) && lam > 0.0 ? lam : 0.0) * t[k] * du;
  }
  const auto radii = profile_radii();
  const auto j = kernel_table(t, wt, d, radii);
  return finish_model(phi, d, radii, j, std::move(audit), "bernstein:" + phi->name() + ";d=" + std::to_string(d));
}

BernsteinModel bernstein_measure_from_atoms(const std::vector<double>& times,
                                            const std::vector<double>& masses, int d,
                                            std::string tag) {
  if (times.empty() || times.size() != masses.size())
    throw DomainError("subordinator atoms need matching times/masses");
  // A law with finitely many atoms gives a bounded kernel near 0: the
  // resulting measure is finite (order 0) and cannot serve as an operator of
  // order in (0, 2).
  double j0 = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) j0 += masses[k] * heat(times[k], 0.0, d);
  (void)tag;
  throw DomainError("subordinator atoms give a finite measure (order 0, kernel at 0 = " + fmt(j0) +
                    "); not admissible for orders in (0, 2)");
}

CheckReport check_angular_nondegeneracy(const LevyMeasure& m, double rho0, double c) {
  CheckReport rep;
  rep.lemma_id = "G";
  const int d = m.dim();
  const auto& atoms = m.atoms();
  // a-factor bounds, sampled through the density against the bare profile.
  double amin = 1.0, amax = 1.0;
  if (!m.is_difference()) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (double u = -6.0; u <= 6.0; u += 0.5) {
        const double r = std::pow(10.0, u);
        const double base = m.multiplier() * m.scale() * m.profile().value(m.scale() * r);
        if (base <= 0.0) continue;
        const double a = m.density(r, i) / base;
        amin = std::min(amin, a);
        amax = std::max(amax, a);
      }
  }
  // min over unit xi of sum_i s_i rho0 |xi.w_i|^2.
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs.push_back({1.0, 0.0, 0.0});
  } else if (d == 2) {
    for (int k = 0; k < 720; ++k) {
      const double th = kPi * k / 720.0;
      dirs.push_back({std::cos(th), std::sin(th), 0.0});
    }
  } else {
    const int n = 4000;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n;
      const double rr = std::sqrt(1.0 - z * z);
      dirs.push_back({rr * std::cos(golden * k), rr * std::sin(golden * k), z});
    }
  }
  double worst = std::numeric_limits<double>::infinity();
  Vec worst_dir{};
  for (const auto& xi : dirs) {
    double acc = 0.0;
    for (const auto& a : atoms) {
      const double p = xi[0] * a.direction[0] + xi[1] * a.direction[1] + xi[2] * a.direction[2];
      acc += a.weight * rho0 * p * p;
    }
    if (acc < worst) {
      worst = acc;
      worst_dir = xi;
    }
  }
  rep.value = worst;
  rep.bound = c;
  rep.worst_point.assign(worst_dir.begin(), worst_dir.begin() + d);
  rep.metrics = {{"a_min", amin}, {"a_max", amax}, {"rho0", rho0}};
  rep.require(amin >= rho0 - 1e-12 && amax <= 1.0 + 1e-12, "rho0 <= a <= 1");
  rep.require(worst >= c, "angular nondegeneracy >= c");
  return rep;
}

}  // namespace nlc::levy
