#include "nlc/symbol/multiplier.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nlc/core/error.hpp"

namespace nlc::spectral {

MultiplierCache::Ptr MultiplierCache::get_or_compute(
    const std::string& key, const std::function<SpectralMultiplier()>& make) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  // Computed outside the lock; a racing duplicate computes the same values.
  auto p = std::make_shared<const SpectralMultiplier>(make());
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.emplace(key, p).first->second;
}

void MultiplierCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.clear();
  hits_ = 0;
}

std::size_t MultiplierCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

MultiplierCache& multiplier_cache() {
  static MultiplierCache c;
  return c;
}

std::string grid_key(const GridSpec& g) {
  std::ostringstream os;
  os.precision(17);
  os << "grid(d=" << g.d << ",n=" << g.n << ",L=" << g.L << ")";
  return os.str();
}

namespace {

void put_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  os.write(buf, 8);
}

double get_le(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  if (!is) throw ConfigError("multiplier binary is truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

void save_multiplier(const SpectralMultiplier& m, const std::string& base,
                     const std::string& measure_hash) {
  std::ofstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw ConfigError("cannot write " + base + ".bin");
  for (const auto& v : m.values) {
    put_le(bin, v.real());
    put_le(bin, v.imag());
  }
  nlohmann::json side = {{"grid", {{"d", m.grid.d}, {"n", m.grid.n}, {"L", m.grid.L}}},
                         {"key", m.key},
                         {"measure_hash", measure_hash},
                         {"count", m.values.size()},
                         {"dtype", "complex128_le"},
                         {"layout", "fft_order_row_major"}};
  std::ofstream js(base + ".json");
  if (!js) throw ConfigError("cannot write " + base + ".json");
  js << side.dump(2) << "\n";
}

SpectralMultiplier load_multiplier(const std::string& base) {
  std::ifstream js(base + ".json");
  if (!js) throw ConfigError("cannot read " + base + ".json");
  nlohmann::json side = nlohmann::json::parse(js);
  GridSpec g(side.at("grid").at("d").get<int>(), side.at("grid").at("n").get<int>(),
             side.at("grid").at("L").get<double>());
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw ConfigError("cannot read " + base + ".bin");
  SpectralMultiplier m{g, std::vector<cplx>(g.size()), side.at("key").get<std::string>()};
  for (auto& v : m.values) {
    const double re = get_le(bin);
    const double im = get_le(bin);
    v = {re, im};
  }
  return m;
}

}  // namespace nlc::spectral
