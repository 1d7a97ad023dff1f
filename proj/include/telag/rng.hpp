// Seedable, portable random number generation for the simulators and the
// optional jitter policy.
//
// Generator: xoshiro256++ with state seeded from splitmix64. Both algorithms
// are fully specified by their reference implementations, so the integer
// stream is identical on every platform. Substream rule: substream i of
// master seed s is the xoshiro256++ generator seeded with the (i+1)-th
// splitmix64 output of s; each independent noise source of a simulation gets
// its own substream, so adding a consumer never shifts another source's draws.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace telag {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
    // all-zero state is the one invalid state of xoshiro256++
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm(seed);
    std::uint64_t derived = sm.next();
    for (std::uint64_t i = 0; i < stream; ++i) derived = sm.next();
    return Xoshiro256pp(derived);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

// Standard normal draws via the Marsaglia polar method. Rejection plus the
// cached spare keep the mapping from integer stream to normal stream
// deterministic for a given generator state.
class GaussianSampler {
 public:
  explicit GaussianSampler(Xoshiro256pp rng) : rng_(rng) {}

  double standard() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * rng_.uniform() - 1.0;
      v = 2.0 * rng_.uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double next(double mean, double stddev) { return mean + stddev * standard(); }

 private:
  Xoshiro256pp rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace telag
