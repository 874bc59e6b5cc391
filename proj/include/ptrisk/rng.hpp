#pragma once

#include <cstdint>
#include <random>

namespace ptrisk {

namespace detail {
// SplitMix64 finalizer; used to expand seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Seeded random stream with deterministic substream derivation.
///
/// Substreams are derived from the (seed, index) pair, so a parallel fan-out
/// over indices reproduces independently of thread count. spawn() derives a
/// fresh child stream each call, for callers that need several independent
/// streams without managing indices. The underlying generator is mt19937_64;
/// determinism holds per build, not across standard-library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed)
        : seed_(seed), engine_(detail::splitmix64(seed)) {}

    /// Independent stream for the given index, a pure function of (seed, index).
    Rng substream(std::uint64_t index) const {
        return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(index + 0x51ed2701a9b3c24fULL)));
    }

    /// Fresh independent child; successive calls give distinct streams.
    Rng spawn() { return substream(0xa02f0d1d90827cb1ULL + spawn_count_++); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via inverse transform (one uniform per variate).
    double normal();

    std::mt19937_64& engine() { return engine_; }
    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t spawn_count_ = 0;
    std::mt19937_64 engine_;
};

}  // namespace ptrisk
