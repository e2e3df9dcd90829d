#pragma once

#include <cstdint>

namespace sigcore {

/// splitmix64; used to expand user seeds into generator state.
class splitmix64 {
 public:
  explicit splitmix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ (Blackman/Vigna). This is the library's fixed sampling
/// generator: all Monte Carlo output is bit-reproducible for a given
/// (seed, stream) pair on any platform with IEEE doubles.
class xoshiro256pp {
 public:
  /// Seeds the four state words from splitmix64, per the generator
  /// authors' recommendation. `stream` selects an independent substream
  /// (used for Monte Carlo batches).
  explicit xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
    splitmix64 sm(seed + 0x9E3779B97F4A7C15ULL * stream);
    s_[0] = sm.next();
    s_[1] = sm.next();
    s_[2] = sm.next();
    s_[3] = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in the open interval (0, 1): top 53 bits plus a half
  /// ulp, so quantile transforms never see 0 or 1 exactly.
  double next_uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace sigcore
