#pragma once

#include <cstdint>
#include <random>

namespace heatfield::mc {

/// Master seed of a Monte Carlo run.
struct RngSeed {
    std::uint64_t value = 0;
};

/// SplitMix64 output finalizer (Steele, Lea & Flood 2014):
///   z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
///   z ^= z >> 27; z *= 0x94d049bb133111eb;
///   z ^= z >> 31;
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of child stream `index`: splitmix64_mix(parent + (index + 1) * golden),
/// golden = 0x9e3779b97f4a7c15. Replica r of a run seeded with s draws from
/// derive_seed(s, r); inside a replica, the clock/offspring stream is
/// derive_seed(., 0) and the spatial stream derive_seed(., 1).
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
    return splitmix64_mix(parent + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// One pseudo-random stream (std::mt19937_64 seeded with a derived seed).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double exponential(double rate) {
        return std::exponential_distribution<double>(rate)(engine_);
    }
    template <typename Dist>
    auto draw(Dist& dist) {
        return dist(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace heatfield::mc
