// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace gpr {

/// Reproducible random source: std::mt19937_64 (fully specified by the standard)
/// with hand-written conversions, since the standard distributions are
/// implementation-defined and would differ between standard libraries.
///
///   uniform()  = (engine() >> 11) * 2^-53, in [0, 1)
///   normal()   = Box-Muller on two uniforms, both outputs used in order
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seed derived from (seed, stream) through std::seed_seq, for per-member streams.
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gpr
