#include "nlc/core/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "nlc/core/error.hpp"

namespace nlc {
namespace {

// FFTW planning is not thread-safe; plans are built once and then shared.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int d, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(d, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    int dims[3] = {n, n, n};
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
    auto* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(d, dims, buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw NumericalGuard("FFTW failed to build a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// (-1)^(i0+i1+i2): moves the sample origin from the box corner to its centre.
void apply_centering(const GridSpec& g, std::vector<cplx>& data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto idx = g.unravel(i);
    if ((idx[0] + idx[1] + idx[2]) % 2 != 0) data[i] = -data[i];
  }
}

}  // namespace

void dft_inplace(const GridSpec& grid, std::vector<cplx>& data, int sign) {
  if (data.size() != grid.size()) throw DomainError("DFT buffer does not match grid");
  fftw_plan plan = cache().get(grid.d, grid.n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

std::vector<cplx> forward(const Field& f) {
  std::vector<cplx> c = f.values;
  dft_inplace(f.grid, c, -1);
  apply_centering(f.grid, c);
  const double vol = f.grid.cell_volume();
  for (auto& v : c) v *= vol;
  return c;
}

Field inverse(const GridSpec& grid, std::vector<cplx> coeffs) {
  apply_centering(grid, coeffs);
  dft_inplace(grid, coeffs, +1);
  const double scale = 1.0 / std::pow(grid.L, grid.d);
  for (auto& v : coeffs) v *= scale;
  return Field(grid, std::move(coeffs));
}

}  // namespace nlc
