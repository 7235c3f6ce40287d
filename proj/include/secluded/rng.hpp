#pragma once

#include <cstdint>

namespace secluded {

/// splitmix64: tiny deterministic generator, identical across platforms. Used wherever a
/// report records its seed; std distributions are avoided so output bytes never depend on
/// the standard library.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n > 0. Modulo bias is irrelevant at the sizes used here.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    /// Uniform integer in [lo, hi] inclusive.
    long next_range(long lo, long hi) {
        return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Derive an independent stream (per-trial seeds).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        SplitMix s(seed ^ (0x5851f42d4c957f2dull * (stream + 1)));
        return s.next();
    }

  private:
    std::uint64_t state_;
};

}  // namespace secluded
