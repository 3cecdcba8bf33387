#include "nlc/spaces/norms.hpp"

#include <cmath>
#include <numbers>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/quadrature.hpp"

namespace nlc::spaces {
namespace {

void check_pq(double p, double q) {
  if (!(p > 1.0 && std::isfinite(p))) throw DomainError("integrability index p must lie in (1, inf)");
  if (!(q > 1.0 && std::isfinite(q))) throw DomainError("summability index q must lie in (1, inf)");
}

double block_weight(const NormContext& ctx, int j, double s) {
  return std::pow(ctx.kappa.kappa(std::pow(static_cast<double>(ctx.partition.N), -j)), -s);
}

void check_grid(const Field& f, const NormContext& ctx) {
  if (f.grid != ctx.partition.grid || f.grid != ctx.psi_mu.grid)
    throw DomainError("field grid does not match the norm context");
  if (f.space != Space::Physical) throw DomainError("norms expect a physical-space field");
}

std::vector<std::string> coverage_flags(const NormContext& ctx) {
  if (!ctx.partition.beyond_coverage) return {};
  return {"frequencies above N^j_max assigned to the last block"};
}

NormReport base_report(const std::string& name, const std::string& variant, double s, double p,
                       double q, const NormContext& ctx) {
  NormReport r;
  r.name = name;
  r.variant = variant;
  r.parameters = {{"s", s}, {"p", p}, {"q", q}, {"N", static_cast<double>(ctx.partition.N)}};
  r.truncation_flags = coverage_flags(ctx);
  return r;
}

}  // namespace

NormContext make_context(int N, const GridSpec& grid, const levy::ScalingTriple& kappa,
                         const spectral::SpectralMultiplier& psi_mu, double alpha1) {
  if (psi_mu.grid != grid) throw DomainError("symbol grid does not match");
  return {build_partition(N, grid), kappa, psi_mu, alpha1};
}

Field bessel_potential(const Field& f, double s, const spectral::SpectralMultiplier& psi_mu) {
  return spectral::apply_multiplier(spectral::bessel_from_symbol(psi_mu, s), f);
}

NormReport besov_norm(const Field& f, double s, double p, double q, Weighting w,
                      const NormContext& ctx) {
  check_pq(p, q);
  if (!std::isfinite(s)) throw DomainError("smoothness index must be finite");
  check_grid(f, ctx);
  auto r = base_report("besov", w == Weighting::Kappa ? "kappa_weighted" : "bessel_weighted", s, p,
                       q, ctx);
  const auto spec = forward(f);
  const auto bessel = spectral::bessel_from_symbol(ctx.psi_mu, s);
  double acc = 0.0;
  for (int j = 0; j < static_cast<int>(ctx.partition.count()); ++j) {
    double part;
    if (w == Weighting::Kappa) {
      part = block_weight(ctx, j, s) * lp_norm(ctx.partition.block_part(j, spec), p);
    } else {
      auto c = spec;
      const auto& b = ctx.partition.blocks[j];
      for (std::size_t i = 0; i < c.size(); ++i) c[i] *= b[i] * bessel.values[i].real();
      part = lp_norm(inverse(f.grid, std::move(c)), p);
    }
    r.components.push_back(part);
    acc += std::pow(part, q);
  }
  r.value = std::pow(acc, 1.0 / q);
  return r;
}

NormReport triebel_norm(const Field& f, double s, double p, Weighting w, const NormContext& ctx) {
  check_pq(p, 2.0);
  if (!std::isfinite(s)) throw DomainError("smoothness index must be finite");
  check_grid(f, ctx);
  auto r = base_report("triebel", w == Weighting::Kappa ? "square_function" : "bessel_direct", s, p,
                       2.0, ctx);
  if (w == Weighting::Bessel) {
    r.value = lp_norm(bessel_potential(f, s, ctx.psi_mu), p);
    return r;
  }
  const auto spec = forward(f);
  Field square(f.grid);
  for (int j = 0; j < static_cast<int>(ctx.partition.count()); ++j) {
    auto g = ctx.partition.block_part(j, spec);
    const double wj = block_weight(ctx, j, s);
    for (std::size_t i = 0; i < g.size(); ++i) square[i] += std::norm(wj * g[i]);
    r.components.push_back(wj * lp_norm(g, p));
  }
  for (auto& v : square.values) v = std::sqrt(v.real());
  r.value = lp_norm(square, p);
  return r;
}

int least_difference_order(double s, double alpha1) {
  return static_cast<int>(std::floor(s * alpha1)) + 1;
}

NormReport difference_norm(const Field& f, double s, double p, double q, int m,
                           DifferenceVariant v, const NormContext& ctx) {
  check_pq(p, q);
  check_grid(f, ctx);
  if (!(s > 0.0)) throw DomainError("difference norms need s > 0");
  const int m0 = least_difference_order(s, ctx.alpha1);
  if (m < m0)
    throw DomainError("difference order " + std::to_string(m) + " must exceed s*alpha1; least admissible m0 = " +
                      std::to_string(m0));
  auto r = base_report("difference", v == DifferenceVariant::Triebel ? "H" : "B", s, p, q, ctx);
  r.parameters["m"] = m;
  const auto& g = f.grid;
  const auto spec = forward(f);

  // Midpoint rule on 32^d cells of [-1, 1]^d, keeping cells centred in the ball.
  constexpr int kCells = 32;
  const double hy = 2.0 / kCells;
  std::vector<std::array<double, 3>> ys;
  const int total = static_cast<int>(std::pow(kCells, g.d));
  for (int c = 0; c < total; ++c) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    int rem = c;
    double n2 = 0.0;
    for (int a = 0; a < g.d; ++a) {
      y[a] = -1.0 + hy * (rem % kCells + 0.5);
      rem /= kCells;
      n2 += y[a] * y[a];
    }
    if (n2 <= 1.0) ys.push_back(y);
  }
  const double cell = std::pow(hy, g.d);
  const auto tq = log_panels(1e-4, 1.0, 64, 5);

  std::vector<std::array<double, 3>> freqs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) freqs[i] = g.frequency(i);

  Field accum(g);  // Triebel: int Q_t(x)^2 dt / (t kappa^2s)
  double besov_acc = 0.0;
  std::vector<double> Q(g.size());
  for (std::size_t k = 0; k < tq.size(); ++k) {
    const double t = tq.x[k];
    std::fill(Q.begin(), Q.end(), 0.0);
    for (const auto& y : ys) {
      auto c = spec;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& xi = freqs[i];
        const double ph = 2.0 * std::numbers::pi * t * (xi[0] * y[0] + xi[1] * y[1] + xi[2] * y[2]);
        const cplx step{std::cos(ph) - 1.0, std::sin(ph)};
        cplx factor = step;
        for (int e = 1; e < m; ++e) factor *= step;
        c[i] *= factor;
      }
      const auto diff = inverse(g, std::move(c));
      for (std::size_t i = 0; i < Q.size(); ++i) Q[i] += cell * std::abs(diff[i]);
    }
    const double weight = tq.w[k] / t;
    if (v == DifferenceVariant::Triebel) {
      const double kw = weight * std::pow(ctx.kappa.kappa(t), -2.0 * s);
      for (std::size_t i = 0; i < Q.size(); ++i) accum[i] += kw * Q[i] * Q[i];
    } else {
      Field qf(g);
      for (std::size_t i = 0; i < Q.size(); ++i) qf[i] = Q[i];
      const double part = weight * std::pow(ctx.kappa.kappa(t), -q * s) * std::pow(lp_norm(qf, p), q);
      besov_acc += part;
      r.components.push_back(part);
    }
  }
  const double base = lp_norm(f, p);
  double osc;
  if (v == DifferenceVariant::Triebel) {
    for (auto& x : accum.values) x = std::sqrt(x.real());
    osc = lp_norm(accum, p);
  } else {
    osc = std::pow(besov_acc, 1.0 / q);
  }
  r.parameters["lp_part"] = base;
  r.parameters["oscillation_part"] = osc;
  r.value = base + osc;
  return r;
}

NormReport space_time_norm(const FieldSeries& u, double p,
                           const std::function<double(const Field&)>& slice_norm,
                           const std::string& name) {
  if (u.slices.size() < 2) throw DomainError("space-time norm needs at least two slices");
  if (!(p >= 1.0 && std::isfinite(p))) throw DomainError("integrability index must be finite and >= 1");
  NormReport r;
  r.name = name;
  r.variant = "trapezoid";
  r.parameters = {{"p", p}, {"T", u.T}};
  const double dt = u.dt();
  double acc = 0.0;
  for (std::size_t k = 0; k < u.slices.size(); ++k) {
    const double v = std::pow(slice_norm(u.slices[k]), p);
    r.components.push_back(v);
    acc += (k == 0 || k + 1 == u.slices.size() ? 0.5 : 1.0) * dt * v;
  }
  r.value = std::pow(acc, 1.0 / p);
  return r;
}

NormReport space_time_norm(const FieldSeries& u, double s, double p,
                           const spectral::SpectralMultiplier& psi_mu) {
  const auto J = spectral::bessel_from_symbol(psi_mu, s);
  auto r = space_time_norm(
      u, p,
      [&](const Field& f) { return s == 0.0 ? lp_norm(f, p) : lp_norm(spectral::apply_multiplier(J, f), p); },
      "space_time_bessel");
  r.parameters["s"] = s;
  return r;
}

}  // namespace nlc::spaces
