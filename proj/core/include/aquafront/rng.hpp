#pragma once

#include <cstdint>
#include <random>

namespace aquafront {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream seed for independent run `run_index` under one master seed.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed, int run_index) {
    return splitmix64(splitmix64(master_seed) ^ (0xa0761d6478bd642fULL * static_cast<std::uint64_t>(run_index + 1)));
}

// mt19937_64 behind explicit draw helpers. std::*_distribution is
// implementation-defined, so all mappings from raw bits to values live here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    bool coin_flip() { return (engine_() & 1u) != 0; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace aquafront
