// SPDX-License-Identifier: Apache-2.0

#ifndef COOPVANET_RNG_HPP
#define COOPVANET_RNG_HPP

#include <cstdint>
#include <random>

namespace coopvanet {

/// Seedable generator with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the C++
/// standard. Conversions to doubles and indices are done here rather than
/// through <random> distributions, whose algorithms are implementation
/// defined, so identical seeds give identical results across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, scale).
    double uniform(double scale) { return uniform() * scale; }

    /// True with probability p; p <= 0 never fires, p >= 1 always does.
    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform index in [0, n), n >= 1.
    std::uint64_t index(std::uint64_t n) {
        // Rejection keeps the draw exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace coopvanet

#endif  // COOPVANET_RNG_HPP
