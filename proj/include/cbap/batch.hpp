// SPDX-License-Identifier: Apache-2.0
//
// Batches of independent Monte Carlo runs. Every batch has a serial
// reference path and an OpenMP path; both return results in job order and
// are bit-identical because each run owns its RNG stream.

#pragma once

#include "cbap/slot_sim.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

namespace cbap {

enum class Execution { serial, parallel };

std::string_view to_string(Execution e);

struct SimJob {
    int n = 1;
    std::uint64_t seed = 0;
    StopRule stop = SlotBudget{};
};

std::vector<SimStats> simulate_batch(std::span<const SimJob> jobs, const MacParams& mac,
                                     const SlotDurations& slots, const SimOptions& opts,
                                     Execution exec);

/// Runs `body(i)` for i in [0, count) serially or across OpenMP threads.
/// Exceptions from `body` are rethrown (the first one by index order).
template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body);

namespace detail {
void run_indexed(std::size_t count, Execution exec, void (*fn)(void*, std::size_t), void* ctx);
}

template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body)
{
    detail::run_indexed(
        count, exec,
        [](void* ctx, std::size_t i) { (*static_cast<std::remove_reference_t<Body>*>(ctx))(i); },
        static_cast<void*>(&body));
}

} // namespace cbap
