#pragma once

#include <cassert>
#include <cstdint>

#include "mmv/int128.hpp"

namespace mmv {

/// splitmix64 finalizer. Also serves as the documented mixing permutation for
/// deriving per-trial seeds: trial_seed = master_seed ^ mix64(trial_index).
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic bit stream with exact accounting. The same seed yields the same
/// stream on every platform; `bits_consumed()` counts every bit handed out.
class BitSource {
 public:
  explicit BitSource(uint64_t seed) : seed_(seed), state_(seed) {}

  /// Pops `count` bits (0..64), least-significant-bit first from the refill words.
  uint64_t bits(unsigned count) {
    assert(count <= 64);
    uint64_t out = 0;
    unsigned got = 0;
    while (got < count) {
      if (avail_ == 0) {
        buf_ = next_word();
        avail_ = 64;
      }
      unsigned take = count - got;
      if (take > avail_) take = avail_;
      uint64_t mask = (take == 64) ? ~uint64_t(0) : ((uint64_t(1) << take) - 1);
      out |= (buf_ & mask) << got;
      buf_ = (take == 64) ? 0 : (buf_ >> take);
      avail_ -= take;
      got += take;
    }
    meter_ += count;
    draws_ += 1;
    return out;
  }

  /// Uniform value in [0, bound) by rejection; each attempt costs ceil(log2(bound)) bits.
  uint64_t uniform_below(uint64_t bound) {
    assert(bound >= 1);
    if (bound == 1) return 0;
    unsigned width = 64 - static_cast<unsigned>(__builtin_clzll(bound - 1));
    for (;;) {
      uint64_t v = bits(width);
      if (v < bound) return v;
    }
  }

  u128 uniform_below_u128(u128 bound) {
    assert(bound >= 1);
    if (bound <= ~uint64_t(0)) return uniform_below(static_cast<uint64_t>(bound));
    u128 m = bound - 1;
    unsigned width = 128 - static_cast<unsigned>(__builtin_clzll(static_cast<uint64_t>(m >> 64)));
    for (;;) {
      u128 v = bits(64);
      v |= u128(bits(width - 64)) << 64;
      if (v < bound) return v;
    }
  }

  uint64_t bits_consumed() const { return meter_; }
  uint64_t draws() const { return draws_; }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t next_word() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  uint64_t seed_;
  uint64_t state_;
  uint64_t buf_ = 0;
  unsigned avail_ = 0;
  uint64_t meter_ = 0;
  uint64_t draws_ = 0;
};

}  // namespace mmv
