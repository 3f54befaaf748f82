// SPDX-License-Identifier: Apache-2.0

#include "cbap/rng.hpp"
#include "cbap/model.hpp"

#include <bit>
#include <cmath>

namespace cbap {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    return mix64(mix64(master) ^ stream);
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0)
        throw InvalidParameter("Rng::below: bound must be >= 1");
    if (bound == 1)
        return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
    for (;;) {
        const std::uint64_t x = engine_() & mask;
        if (x < bound)
            return x;
    }
}

double Rng::normal(double mean, double stddev)
{
    if (has_spare_) {
        has_spare_ = false;
        return mean + stddev * spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform01();
    } while (u1 == 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return mean + stddev * r * std::cos(kTwoPi * u2);
}

} // namespace cbap
