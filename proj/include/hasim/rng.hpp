#pragma once

// Per-run random streams with deterministic seed derivation, so every
// (master seed, scenario, run index) triple maps to the same stream
// regardless of execution order or worker count.

#include <cstdint>
#include <random>
#include <string>

namespace hasim {

// SplitMix64 step; the standard way to stretch one 64-bit seed into many.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// FNV-1a over a string; used to fold scenario ids into seed material.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, const std::string& scenario_id,
                                 std::uint64_t run_index) {
    std::uint64_t state = master ^ fnv1a(scenario_id);
    std::uint64_t a = splitmix64(state);
    state ^= run_index * 0xD1342543DE82EF95ULL + 1;
    std::uint64_t b = splitmix64(state);
    return a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
}

class RunRng {
public:
    explicit RunRng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double gauss(double mean, double sigma) {
        if (sigma <= 0.0) return mean;
        return std::normal_distribution<double>(mean, sigma)(engine_);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return std::bernoulli_distribution(p)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace hasim
