#pragma once

#include <cstdint>

namespace gwnary {

// SplitMix64 finalizer (Steele, Lea & Flood; constants due to Vigna).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream. A stream is identified by a 64-bit key; the
/// i-th output is a pure function of (key, i), so streams can be created for
/// every node of a random tree independently of traversal order. Keys for
/// child nodes (or per-trial roots) come from derive(), which is collision
/// resistant enough for Monte Carlo purposes: the finalizer is a bijection,
/// so siblings never collide and unrelated keys collide with probability
/// ~2^-64 per pair.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform draw in (0,1); never returns 0 or 1 exactly.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    static constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
        return splitmix64_mix(key + 0xD1B54A32D192ED03ULL * (index + 1));
    }

private:
    std::uint64_t state_;
};

}  // namespace gwnary
