#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlc {

using cplx = std::complex<double>;

// Periodic box [-L/2, L/2)^d sampled with n points per axis (power of two).
struct GridSpec {
  int d = 1;
  int n = 256;
  double L = 16.0;

  GridSpec() = default;
  GridSpec(int d_, int n_, double L_);

  std::size_t size() const;
  double h() const { return L / n; }
  double cell_volume() const;
  double nyquist() const { return 0.5 * n / L; }

  // Signed frequency index of FFT position i along one axis.
  int wave_index(int i) const { return i < n / 2 ? i : i - n; }

  std::array<int, 3> unravel(std::size_t flat) const;
  std::array<double, 3> point(std::size_t flat) const;
  std::array<double, 3> frequency(std::size_t flat) const;
  double frequency_norm(std::size_t flat) const;

  bool operator==(const GridSpec& o) const { return d == o.d && n == o.n && L == o.L; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

enum class Space { Physical, Frequency };

// Complex samples on a GridSpec, row-major with axis 0 slowest.
struct Field {
  GridSpec grid;
  std::vector<cplx> values;
  Space space = Space::Physical;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), values(g.size(), cplx{0.0, 0.0}) {}
  Field(const GridSpec& g, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

double lp_norm(const Field& f, double p);
double sup_norm(const Field& f);
double lp_distance(const Field& a, const Field& b, double p);

// Time-indexed family of fields on a uniform grid of [0, T].
struct FieldSeries {
  GridSpec grid;
  double T = 1.0;
  std::vector<Field> slices;

  std::size_t steps() const { return slices.empty() ? 0 : slices.size() - 1; }
  double dt() const { return T / static_cast<double>(steps()); }
  double time(std::size_t k) const { return dt() * static_cast<double>(k); }
};

}  // namespace nlc
