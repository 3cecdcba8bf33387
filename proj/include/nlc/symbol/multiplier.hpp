#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "nlc/symbol/symbol.hpp"

namespace nlc::spectral {

// Thread-safe memo of multipliers keyed by measure fingerprint, grid and
// operator parameter. The solver reuses symbols across time steps through it.
class MultiplierCache {
 public:
  using Ptr = std::shared_ptr<const SpectralMultiplier>;

  Ptr get_or_compute(const std::string& key, const std::function<SpectralMultiplier()>& make);
  void clear();
  std::size_t size() const;
  std::size_t hits() const { return hits_; }

 private:
  mutable std::mutex mu_;
  std::map<std::string, Ptr> entries_;
  std::size_t hits_ = 0;
};

MultiplierCache& multiplier_cache();

std::string grid_key(const GridSpec& g);

// Little-endian complex128 array at base + ".bin" with a JSON sidecar at
// base + ".json" describing the grid and measure hash.
void save_multiplier(const SpectralMultiplier& m, const std::string& base,
                     const std::string& measure_hash);
SpectralMultiplier load_multiplier(const std::string& base);

}  // namespace nlc::spectral
