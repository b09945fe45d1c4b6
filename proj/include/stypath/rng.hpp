#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "stypath/common.hpp"

namespace stypath::rng {

// splitmix64, used for seeding and key derivation.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** backed stream with explicit distribution code, so draws are
// identical across standard libraries.
class Stream {
public:
  explicit Stream(uint64_t seed = 0) { reseed(seed); }

  void reseed(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
    has_cached_normal_ = false;
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(next_u64() % span);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
  }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4] = {};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Keyed seed derivation: every pipeline stage draws from its own stream,
// derived from the root seed and a list of string/integer keys.
inline uint64_t derive_seed(uint64_t root, std::initializer_list<std::string_view> keys) {
  uint64_t h = 0x6a09e667f3bcc908ULL ^ root;
  for (auto k : keys) {
    h = fnv1a64(k, h);
    splitmix64(h);
  }
  uint64_t st = h;
  return splitmix64(st);
}

inline uint64_t derive_seed(uint64_t root, std::string_view name) { return derive_seed(root, {name}); }

inline uint64_t derive_seed(uint64_t root, std::string_view name, uint64_t index) {
  uint64_t h = derive_seed(root, {name});
  uint64_t st = h ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  return splitmix64(st);
}

inline uint64_t derive_seed(uint64_t root, std::string_view name, std::string_view sub) {
  return derive_seed(root, {name, sub});
}

}  // namespace stypath::rng
