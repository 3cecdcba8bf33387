#include "nlc/core/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/core/error.hpp"

namespace nlc {

GridSpec::GridSpec(int d_, int n_, double L_) : d(d_), n(n_), L(L_) {
  if (d < 1 || d > 3) throw DomainError("grid dimension must be 1, 2 or 3");
  if (n < 8 || (n & (n - 1)) != 0) throw DomainError("grid size must be a power of two >= 8");
  if (!(L > 0.0)) throw DomainError("grid period must be positive");
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int a = 0; a < d; ++a) s *= static_cast<std::size_t>(n);
  return s;
}

double GridSpec::cell_volume() const { return std::pow(h(), d); }

std::array<int, 3> GridSpec::unravel(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = d - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return idx;
}

std::array<double, 3> GridSpec::point(std::size_t flat) const {
  auto idx = unravel(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) x[a] = -0.5 * L + idx[a] * h();
  return x;
}

std::array<double, 3> GridSpec::frequency(std::size_t flat) const {
  auto idx = unravel(flat);
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) xi[a] = wave_index(idx[a]) / L;
  return xi;
}

double GridSpec::frequency_norm(std::size_t flat) const {
  auto xi = frequency(flat);
  return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

Field::Field(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw DomainError("field size does not match grid");
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p)) return sup_norm(f);
  if (!(p >= 1.0)) throw DomainError("L_p exponent must be >= 1");
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::pow(std::abs(v), p);
  return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double lp_distance(const Field& a, const Field& b, double p) {
  if (a.grid != b.grid) throw DomainError("fields live on different grids");
  Field diff(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return lp_norm(diff, p);
}

}  // namespace nlc
