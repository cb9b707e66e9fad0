#pragma once
// Platform-independent 64-bit PRNG shared by every stochastic routine.
//
// xoshiro256** (Blackman & Vigna) seeded through splitmix64. The output
// stream depends only on the 64-bit seed, never on the standard library,
// so traces are reproducible across compilers and languages that implement
// the same two recurrences.

#include <array>
#include <concepts>
#include <cstdint>
#include <limits>

namespace gamify {

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Rng {
public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept { return next(); }

    constexpr std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 bits of resolution.
    constexpr double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, bound) by rejection; bound must be > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - (max() % bound);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

// Anything that can hand out uniform [0,1) doubles. The simulators are
// written against this so tests can script the success draws.
template <typename G>
concept UniformSource = requires(G g) {
    { g.uniform() } -> std::convertible_to<double>;
};

}  // namespace gamify
