// SPDX-License-Identifier: Apache-2.0
//
// Portable random streams. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the transforms to doubles, bounded
// integers and normals are implemented here because the standard library
// distributions are implementation-defined.

#pragma once

#include <cstdint>
#include <random>

namespace cbap {

/// SplitMix64 finalizer (Steele, Lea, Flood constants).
std::uint64_t mix64(std::uint64_t x);

/// Deterministic child seed for stream `stream` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, bound), unbiased (bitmask rejection).
    std::uint64_t below(std::uint64_t bound);
    /// Box-Muller; the second variate of each pair is cached.
    double normal(double mean, double stddev);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace cbap
