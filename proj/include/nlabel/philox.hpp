#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace nlabel {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block is a
// pure function of (key, counter), so any position of a stream can be
// recomputed independently of how it was reached.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// Sequential view of one Philox stream. The 64-bit seed is the key; the
// stream id occupies the third counter word, the block index the first two.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint32_t stream_id)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream_id) {}

  std::uint32_t next_u32() {
    if (used_ == 4) refill();
    return buffer_[used_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1).
  double uniform_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // log of a Gamma(shape, 1) variate; Marsaglia-Tsang with the
  // shape + 1 boost below one, kept in log space so tiny shapes cannot
  // underflow to zero.
  double log_gamma_variate(double shape) {
    if (shape < 1.0) return log_gamma_variate(shape + 1.0) + std::log(uniform_open()) / shape;
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return std::log(d * v);
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return std::log(d * v);
    }
  }

  std::uint64_t block_index() const { return block_; }

 private:
  static constexpr double kPi = 3.14159265358979323846;

  void refill() {
    buffer_ = Philox4x32::generate({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                    stream_, 0u},
                                   key_);
    ++block_;
    used_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int used_ = 4;
};

}  // namespace nlabel
