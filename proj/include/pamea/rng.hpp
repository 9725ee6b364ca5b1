#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pamea {

/// Deterministic random stream: identical (seed, label) pairs yield identical
/// draw sequences on every platform. Implemented as xoshiro256++ seeded via
/// splitmix64 from the master seed mixed with an FNV-1a hash of the label;
/// all value transforms (uniform doubles, bounded integers) are done by hand
/// so no standard-library distribution variability can leak in.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view label)
        : seed_(seed), label_(label) {
        std::uint64_t x = seed ^ fnv1a(label);
        for (auto& s : state_) s = splitmix64(x);
    }

    std::uint64_t next_u64() {
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

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform index in [0, n); n must be positive. Multiply-shift mapping
    /// (bias below 2^-64 per draw, irrelevant at these scales).
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool coin() { return (next_u64() >> 63) != 0; }

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d49bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 14695981039346656037ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

    std::uint64_t seed_;
    std::string label_;
    std::uint64_t state_[4];
};

} // namespace pamea
