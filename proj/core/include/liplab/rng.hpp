#pragma once

#include <cstdint>
#include <random>

namespace liplab {

/// SplitMix64 finalizer. Bijective on 64-bit words, used both as the
/// per-trial stream mixer and to stretch a single seed into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic per-trial seed: feed (master_seed, trial_index) through two
/// rounds of the SplitMix64 mixer. The map trial_index -> seed is injective
/// for a fixed master seed, so trial streams never collide and results are
/// independent of worker count and scheduling.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (trial_index * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL);
    std::uint64_t b = splitmix64(s);
    return splitmix64(s) ^ b;
}

/// Stream of doubles for one trial. Gaussian draws go through
/// std::normal_distribution (Marsaglia polar in libstdc++): distributionally
/// correct and deterministic per build, which is all the sampling contract
/// requires. Cross-platform bit-identity is best effort.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double gaussian(double sigma = 1.0) {
        return std::normal_distribution<double>(0.0, sigma)(engine_);
    }
    double rademacher(double scale = 1.0) {
        return (engine_() & 1ULL) ? scale : -scale;
    }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

inline Rng derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
    return Rng(derive_trial_seed(master_seed, trial_index));
}

}  // namespace liplab
