#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace entrex {

/// SplitMix64 (Steele, Lea & Flood).  The whole generator state is one
/// 64-bit word, so it serializes trivially and replays bit-exactly on every
/// platform.  Used for mini-game shuffles and market noise.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state = 0) noexcept : state_(state) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection; bound must be > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

    /// Uniform double in the open interval (0, 1).
    constexpr double unit_open() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; always consumes exactly two draws.
    double standard_normal() noexcept {
        const double u1 = unit_open();
        const double u2 = unit_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

    friend constexpr bool operator==(const SplitMix64&, const SplitMix64&) = default;

private:
    std::uint64_t state_;
};

/// One-shot mix of a value, handy for deriving per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t value) noexcept {
    SplitMix64 g(value);
    return g.next();
}

}  // namespace entrex
