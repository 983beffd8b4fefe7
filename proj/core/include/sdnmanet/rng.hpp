#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sdnmanet {

/// Seeded random stream for one concern of a run (mobility, traffic, ...).
///
/// Streams are derived from the run seed and a stream name, so adding draws
/// to one concern never perturbs another. Uniform draws are built from raw
/// 64-bit engine output rather than <random> distributions, whose output is
/// implementation-defined; reports stay byte-identical across toolchains.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view name)
      : engine_(derive(seed, name)) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi); returns lo when the range is empty.
  double uniform(double lo, double hi) {
    if (!(hi > lo)) return lo;
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  static std::uint64_t derive(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the stream name
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return splitmix(seed ^ splitmix(h));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace sdnmanet
