#pragma once

#include <cstdint>
#include <string_view>

namespace sanc {

// Seeded splitmix64 stream. Substreams are derived from (seed, purpose) so
// that batch sampling, Rademacher draws, initialization, etc. never share
// state; a run is a pure function of (config, seed, data).
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static Rng substream(std::uint64_t seed, std::string_view purpose) {
    // FNV-1a over the purpose tag, mixed with the seed.
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : purpose) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return Rng(mix(seed ^ mix(h)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  int rademacher() { return (next() & 1) ? 1 : -1; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace sanc
