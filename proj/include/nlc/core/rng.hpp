#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace nlc {

// Philox4x32-10 counter-based generator. A stream is addressed by
// (seed, path, substream); draws advance an internal block counter, so the
// values seen by one path never depend on how paths are scheduled.
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t path, std::uint32_t substream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32), substream, 0} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ >= 2) refill();
    const std::uint64_t v = (static_cast<std::uint64_t>(block_[2 * pos_]) << 32) | block_[2 * pos_ + 1];
    ++pos_;
    return v;
  }

  // Uniform on the open interval (0, 1).
  double uniform() { return ((*this)() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

 private:
  void refill() {
    std::array<std::uint32_t, 4> c = ctr_;
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    block_ = c;
    pos_ = 0;
    ++ctr_[3];
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> block_{};
  int pos_ = 2;
};

// Standard normal pair from two uniforms (Box-Muller); portable across
// standard libraries, unlike std::normal_distribution.
inline void box_muller(double u1, double u2, double& z1, double& z2) {
  const double r = std::sqrt(-2.0 * std::log(u1));
  z1 = r * std::cos(2.0 * std::numbers::pi * u2);
  z2 = r * std::sin(2.0 * std::numbers::pi * u2);
}

}  // namespace nlc
