// SPDX-License-Identifier: Apache-2.0
//
// arisim: counter-based random streams for reproducible parallel Monte Carlo.
//
// Each (seed, stream) pair selects an independent xoshiro256++ generator whose
// state is expanded from the pair with splitmix64. Iteration i of a simulation
// owns stream i, so results never depend on worker count or scheduling.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace arisim {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed derivation, e.g. one sub-seed per sweep row.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    return splitmix64(s);
}

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept {
        std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        for (auto& w : state_) w = splitmix64(s);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() noexcept {
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

    /// Uniform double in [0, 1).
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    bool next_bernoulli(double p) noexcept { return next_double() < p; }

    /// Circularly-symmetric complex Gaussian with zero mean and unit total
    /// variance (0.5 per component), via Box-Muller.
    std::complex<double> next_cnormal() noexcept {
        const double u = 1.0 - next_double();  // (0, 1] keeps the log finite
        const double r = std::sqrt(-std::log(u));
        const double th = 2.0 * std::numbers::pi * next_double();
        return {r * std::cos(th), r * std::sin(th)};
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace arisim
