#pragma once

#include <cstdint>
#include <random>

namespace homvb {

/// Default seed for every randomized search; reports print the seed in use.
inline constexpr std::uint64_t kDefaultSeed = 424242;

/// Deterministic generator. Draws use raw mt19937_64 output reduced by
/// modulo, never std distributions, so sequences are identical across
/// platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform-ish integer in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Index in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

private:
    std::mt19937_64 eng_;
};

}  // namespace homvb
