// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cbap/model.hpp"

#include <cstddef>
#include <vector>

namespace cbap {

/// Per-station backoff chain with states (stage i, counter k), i in [0, H],
/// k in [0, W_i - 1]. From (i, k > 0) the counter decrements; from (i, 0)
/// the station transmits, moving to stage min(i + 1) with probability p
/// (or back to stage 0 with a fresh packet after stage H) and to stage 0
/// otherwise. Every new counter is uniform over the stage window.
class BackoffChain {
public:
    explicit BackoffChain(const MacParams& mac);

    std::size_t state_count() const { return states_; }
    std::size_t index(int stage, int counter) const;
    const MacParams& mac() const { return mac_; }

    struct Stationary {
        std::vector<double> probabilities; ///< indexed by index(stage, counter)
        double tau = 0.0;                  ///< sum over stages of b(i, 0)
        double b00 = 0.0;
    };

    /// Stationary distribution for collision probability p in [0, 1),
    /// from a sparse LU solve of pi (P - I) = 0 with sum(pi) = 1.
    Stationary stationary(double p) const;

    /// Row-stochastic transition probabilities as (from, to, prob) triples.
    struct Transition {
        std::size_t from;
        std::size_t to;
        double prob;
    };
    std::vector<Transition> transitions(double p) const;

private:
    MacParams mac_;
    std::vector<std::size_t> offset_;
    std::size_t states_ = 0;
};

/// tau(p) from the numerically solved chain.
double tau_of_p_numeric(double p, const MacParams& mac);

} // namespace cbap
