#include "nlc/symbol/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlc/core/error.hpp"
#include "nlc/core/fft.hpp"
#include "nlc/core/parallel.hpp"
#include "nlc/symbol/multiplier.hpp"

namespace nlc::spectral {
namespace {

std::string location(const std::array<double, 3>& xi, int d) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (int a = 0; a < d; ++a) os << (a ? ", " : "") << xi[a];
  os << ")";
  return os.str();
}

// One atom at a time: the exponent depends on xi only through |xi . w|, and
// many lattice points share that value.
SpectralMultiplier compute_symbol(const levy::LevyMeasure& pi, const GridSpec& grid) {
  SpectralMultiplier m{grid, std::vector<cplx>(grid.size(), cplx{0.0, 0.0}), ""};
  if (pi.is_difference()) {
    auto p = symbol(pi.plus(), grid);
    auto q = symbol(pi.minus(), grid);
    for (std::size_t i = 0; i < m.size(); ++i) m.values[i] = p.values[i] - q.values[i];
    return m;
  }
  if (pi.dim() != grid.d) throw DomainError("measure and grid dimensions differ");
  const auto& atoms = pi.atoms();
  std::vector<double> u(grid.size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const auto& w = atoms[a].direction;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto xi = grid.frequency(i);
      u[i] = xi[0] * w[0] + xi[1] * w[1] + xi[2] * w[2];
    }
    std::vector<double> keys(u.size());
    std::transform(u.begin(), u.end(), keys.begin(), [](double v) { return std::abs(v); });
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<cplx> vals(keys.size());
    parallel_for(keys.size(), [&](std::size_t k) { vals[k] = pi.atom_exponent(a, keys[k]); });
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto k = static_cast<std::size_t>(
          std::lower_bound(keys.begin(), keys.end(), std::abs(u[i])) - keys.begin());
      const cplx v = u[i] < 0.0 ? std::conj(vals[k]) : vals[k];
      m.values[i] += atoms[a].weight * v;
    }
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.values[i].real()) || !std::isfinite(m.values[i].imag()))
      throw NumericalGuard("symbol quadrature produced a non-finite value at xi = " +
                           location(grid.frequency(i), grid.d));
  }
  m.values[0] = {0.0, 0.0};
  return m;
}

}  // namespace

SpectralMultiplier symbol(const levy::LevyMeasure& pi, const GridSpec& grid) {
  const std::string key = "psi|" + pi.fingerprint() + "|" + grid_key(grid);
  auto p = multiplier_cache().get_or_compute(key, [&] {
    auto m = compute_symbol(pi, grid);
    m.key = key;
    return m;
  });
  return *p;
}

SpectralMultiplier symbol_sym(const levy::LevyMeasure& pi, const GridSpec& grid) {
  auto m = symbol(pi, grid);
  for (auto& v : m.values) v = {v.real(), 0.0};
  m.key = "re_" + m.key;
  return m;
}

Comparability compare_symbols(const SpectralMultiplier& num, const SpectralMultiplier& den) {
  if (num.grid != den.grid) throw DomainError("symbols live on different grids");
  Comparability c;
  c.c1 = std::numeric_limits<double>::infinity();
  c.c2 = 0.0;
  for (std::size_t i = 1; i < num.size(); ++i) {
    const double b = std::abs(den.values[i]);
    if (!(b > 0.0))
      throw DomainError("degenerate comparator: comparator symbol vanishes at xi = " +
                        location(den.grid.frequency(i), den.grid.d));
    const double r = std::abs(num.values[i]) / b;
    if (r < c.c1) {
      c.c1 = r;
      c.argmin = num.grid.frequency(i);
    }
    if (r > c.c2) {
      c.c2 = r;
      c.argmax = num.grid.frequency(i);
    }
  }
  return c;
}

Comparability check_comparability(const levy::LevyMeasure& pi, const levy::LevyMeasure& mu,
                                  const GridSpec& grid) {
  return compare_symbols(symbol(pi, grid), symbol(mu, grid));
}

void apply_in_frequency(const SpectralMultiplier& m, std::vector<cplx>& coeffs) {
  if (coeffs.size() != m.size()) throw DomainError("multiplier and coefficients differ in size");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= m.values[i];
}

Field apply_multiplier(const SpectralMultiplier& m, const Field& f) {
  if (m.grid != f.grid) throw DomainError("multiplier and field live on different grids");
  auto c = forward(f);
  apply_in_frequency(m, c);
  return inverse(f.grid, std::move(c));
}

SpectralMultiplier bessel_from_symbol(const SpectralMultiplier& psi, double s) {
  if (!std::isfinite(s)) throw DomainError("Bessel order must be finite");
  SpectralMultiplier m = psi;
  for (auto& v : m.values) v = {std::pow(1.0 - v.real(), s), 0.0};
  std::ostringstream os;
  os.precision(17);
  os << "bessel(" << s << ")|" << psi.key;
  m.key = os.str();
  return m;
}

SpectralMultiplier bessel_multiplier(const levy::LevyMeasure& mu, double s, const GridSpec& grid) {
  return bessel_from_symbol(symbol(mu, grid), s);
}

SpectralMultiplier fractional_from_symbol(const SpectralMultiplier& psi, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("fractional order must lie in (0, 1]");
  if (delta == 1.0) return psi;
  SpectralMultiplier m = psi;
  for (auto& v : m.values) {
    const double base = -v.real();
    v = {base > 0.0 ? -std::pow(base, delta) : 0.0, 0.0};
  }
  std::ostringstream os;
  os.precision(17);
  os << "frac(" << delta << ")|" << psi.key;
  m.key = os.str();
  return m;
}

SpectralMultiplier fractional_multiplier(const levy::LevyMeasure& pi, double delta,
                                         const GridSpec& grid) {
  return fractional_from_symbol(symbol(pi, grid), delta);
}

SpectralMultiplier constant_multiplier(const GridSpec& grid, cplx value) {
  std::ostringstream os;
  os << "const(" << value.real() << "," << value.imag() << ")|" << grid_key(grid);
  return {grid, std::vector<cplx>(grid.size(), value), os.str()};
}

double stable_constant(const levy::LevyMeasure& stable) {
  levy::Vec xi{1.0, 0.0, 0.0};
  const double psi = stable.symbol(xi).real();
  return -psi / std::pow(2.0 * std::numbers::pi, stable.sigma());
}

}  // namespace nlc::spectral
