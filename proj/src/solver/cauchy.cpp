#include "nlc/solver/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/parallel.hpp"

namespace nlc::solver {
namespace {

constexpr int kSeriesTerms = 20;

// sum_{n>=0} z^n / (n + shift)!
cplx phi_series(cplx z, int shift) {
  double fact = 1.0;
  for (int k = 2; k <= shift; ++k) fact *= k;
  cplx term = 1.0 / fact, acc = term;
  for (int n = 1; n < kSeriesTerms; ++n) {
    term *= z / static_cast<double>(n + shift);
    acc += term;
  }
  return acc;
}

void validate(const CauchyProblem& pb) {
  if (!(pb.T > 0.0) || !std::isfinite(pb.T)) throw DomainError("T must be positive");
  if (!(pb.lambda >= 0.0) || !std::isfinite(pb.lambda)) throw DomainError("lambda must be >= 0");
  if (pb.g.values.empty()) throw DomainError("initial datum is empty");
  if (pb.pi.dim() != pb.g.grid.d) throw DomainError("measure and grid dimensions differ");
  for (const auto& s : pb.f.slices)
    if (s.grid != pb.g.grid) throw DomainError("source and datum live on different grids");
}

void check_comparability(const CauchyProblem& pb) {
  const auto c = spectral::check_comparability(pb.pi, pb.mu, pb.grid());
  if (!(c.c1 > 0.0) || !std::isfinite(c.c2))
    throw DomainError("comparability constants must be finite and positive");
}

std::vector<cplx> exponent(const CauchyProblem& pb) {
  const auto psi = spectral::symbol(pb.pi, pb.grid());
  std::vector<cplx> z(psi.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] = psi[k] - pb.lambda;
    if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag())) {
      const auto xi = pb.grid().frequency(k);
      std::ostringstream os;
      os << "non-finite multiplier at xi = (" << xi[0] << ", " << xi[1] << ", " << xi[2] << ")";
      throw NumericalGuard(os.str());
    }
  }
  return z;
}

Field slice_at(const FieldSeries& f, double t) {
  if (f.slices.size() == 1) return f.slices[0];
  const double u = std::clamp(t / f.dt(), 0.0, static_cast<double>(f.steps()));
  const std::size_t k = std::min(static_cast<std::size_t>(u), f.steps() - 1);
  const double w = u - static_cast<double>(k);
  Field out(f.grid);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (1.0 - w) * f.slices[k][i] + w * f.slices[k + 1][i];
  return out;
}

// One exponential step of length h for every mode: state <- e^{zh} state + h[(phi1-phi2) a + phi2 b].
void step(const std::vector<cplx>& z, double h, std::vector<cplx>& state, const std::vector<cplx>* a,
          const std::vector<cplx>* b) {
  parallel_for(state.size(), [&](std::size_t k) {
    const cplx w = z[k] * h;
    cplx v = std::exp(w) * state[k];
    if (a) {
      const cplx p1 = phi1(w), p2 = phi2(w);
      v += h * ((p1 - p2) * (*a)[k] + p2 * (*b)[k]);
    }
    state[k] = v;
  });
}

}  // namespace

cplx phi1(cplx z) {
  if (std::abs(z) < kPhiSeriesRadius) return phi_series(z, 1);
  return (std::exp(z) - 1.0) / z;
}

cplx phi2(cplx z) {
  if (std::abs(z) < kPhiSeriesRadius) return phi_series(z, 2);
  return (std::exp(z) - 1.0 - z) / (z * z);
}

double rho_lambda(double lambda, double T) {
  return lambda > 0.0 ? std::min(1.0 / lambda, T) : T;
}

Solution solve(const CauchyProblem& pb, int n_steps) {
  validate(pb);
  if (n_steps < 1) throw DomainError("n_steps must be >= 1");
  const bool source = !pb.f.slices.empty();
  if (source && pb.f.slices.size() != static_cast<std::size_t>(n_steps) + 1)
    throw DomainError("source must be sampled at n_steps + 1 slices");
  if (source && std::abs(pb.f.T - pb.T) > 1e-12 * pb.T) throw DomainError("source horizon differs from T");
  check_comparability(pb);
  const auto z = exponent(pb);
  const double h = pb.T / n_steps;

  Solution sol;
  sol.time_step = h;
  sol.rho_lambda = rho_lambda(pb.lambda, pb.T);
  sol.u.grid = pb.grid();
  sol.u.T = pb.T;
  sol.u.slices.reserve(n_steps + 1);
  sol.u.slices.push_back(pb.g);
  auto state = forward(pb.g);
  std::vector<cplx> fa, fb;
  if (source) fb = forward(pb.f.slices[0]);
  for (int k = 0; k < n_steps; ++k) {
    if (source) {
      fa = std::move(fb);
      fb = forward(pb.f.slices[k + 1]);
      step(z, h, state, &fa, &fb);
    } else {
      step(z, h, state, nullptr, nullptr);
    }
    sol.u.slices.push_back(inverse(pb.grid(), state));
  }
  double imag = 0.0;
  for (const auto& s : sol.u.slices)
    for (const auto& v : s.values) imag = std::max(imag, std::abs(v.imag()));
  sol.diagnostics["max_imag"] = imag;
  sol.diagnostics["n_steps"] = n_steps;
  return sol;
}

Field apply_I_lambda(const CauchyProblem& pb, const Field& g, double t) {
  if (!(t >= 0.0 && t <= pb.T)) throw DomainError("t outside [0, T]");
  if (t == 0.0) return g;
  const auto z = exponent(pb);
  auto c = forward(g);
  step(z, t, c, nullptr, nullptr);
  return inverse(g.grid, std::move(c));
}

Field apply_R_lambda(const CauchyProblem& pb, const FieldSeries& f, double t) {
  if (!(t >= 0.0 && t <= pb.T)) throw DomainError("t outside [0, T]");
  if (f.slices.empty() || t == 0.0) return Field(pb.grid());
  const auto z = exponent(pb);
  std::vector<cplx> state(pb.grid().size(), cplx{0.0, 0.0});
  auto fb = forward(f.slices[0]);
  double clock = 0.0;
  for (std::size_t k = 0; k < f.steps() && clock < t; ++k) {
    const double next = std::min(t, f.time(k + 1));
    auto fa = std::move(fb);
    fb = forward(next == f.time(k + 1) ? f.slices[k + 1] : slice_at(f, next));
    step(z, next - clock, state, &fa, &fb);
    clock = next;
  }
  return inverse(pb.grid(), std::move(state));
}

Field resolvent(const levy::LevyMeasure& mu, const Field& g) {
  const auto psi = spectral::symbol(mu, g.grid);
  auto c = forward(g);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] /= (1.0 - psi[k]);
  return inverse(g.grid, std::move(c));
}

double resolvent_roundtrip_error(const levy::LevyMeasure& mu, const Field& g) {
  const auto r = resolvent(mu, g);
  const auto Lr = apply_generator(mu, r);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(r[i] - Lr[i] - g[i]));
  return err;
}

Field apply_generator(const levy::LevyMeasure& pi, const Field& f) {
  return spectral::apply_multiplier(spectral::symbol(pi, f.grid), f);
}

}  // namespace nlc::solver
