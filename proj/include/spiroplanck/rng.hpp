#pragma once

#include <cstdint>
#include <random>

namespace spiroplanck::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Per-trial stream seed: master XOR (index * golden gamma), wrapping.
constexpr std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) {
    return master ^ (index * kGoldenGamma);
}

/// mt19937_64 with a portable [0, 1) mapping: the top 53 bits scaled by 2^-53.
/// std::uniform_real_distribution is implementation-defined, so it is not used.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

    /// Index in [0, n) by scaling a unit draw; n must be > 0.
    std::uint64_t index(std::uint64_t n) {
        const auto i = static_cast<std::uint64_t>(unit() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace spiroplanck::rng
