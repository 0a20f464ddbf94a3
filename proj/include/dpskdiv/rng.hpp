// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 dpskdiv contributors

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "dpskdiv/types.hpp"

namespace dpskdiv::rng {

// Counter-friendly splitmix64 stream. Cheap to seed, so simulation code creates
// one stream per (seed, grid point, trial) triple; results are then independent
// of thread count and scheduling.
class Splitmix64 {
  public:
    explicit Splitmix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1]; never returns 0, so log() is safe.
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform index in [0, n) for n a power of two (no modulo bias).
    int uniform_pow2_index(int n) {
        return static_cast<int>(next_u64() & static_cast<std::uint64_t>(n - 1));
    }

    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double u1 = uniform_pos();
        const double u2 = uniform_pos();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    /// Circular complex Gaussian with E|z|^2 == variance_total.
    Complex complex_normal(double variance_total) {
        const auto [g1, g2] = normal_pair();
        const double s = std::sqrt(0.5 * variance_total);
        return {s * g1, s * g2};
    }

  private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Stream for one Monte Carlo trial, derived solely from (master seed, grid
/// index, trial index). Same triple -> same stream, on any thread.
inline Splitmix64 trial_stream(std::uint64_t master_seed, std::uint64_t grid_index,
                               std::uint64_t trial) {
    std::uint64_t h = detail::mix(master_seed ^ 0x8f1bbcdcbfa53e0bULL);
    h = detail::mix(h ^ detail::mix(grid_index ^ 0x2545f4914f6cdd1dULL));
    h = detail::mix(h ^ detail::mix(trial));
    return Splitmix64(h);
}

}  // namespace dpskdiv::rng
