#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

namespace tritangle {

/// Random stream keyed by (seed, index, stream). Two streams with the same
/// key produce the same numbers no matter which thread or iteration order
/// asks for them.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index, std::uint32_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Pair of independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 engine_;
};

/// Streams used by the library, so the same (seed, index) never feeds two
/// unrelated consumers.
namespace rng_stream {
inline constexpr std::uint32_t kHaarState = 1;
inline constexpr std::uint32_t kHaarQubit = 2;
inline constexpr std::uint32_t kOptimizerRestart = 3;
inline constexpr std::uint32_t kLocalUnitary = 4;
inline constexpr std::uint32_t kCanonicalCoeffs = 5;
inline constexpr std::uint32_t kMonteCarloInput = 7;
}  // namespace rng_stream

}  // namespace tritangle
