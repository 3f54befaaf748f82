// SPDX-License-Identifier: Apache-2.0

#include "cbap/batch.hpp"

#include <omp.h>

#include <exception>

namespace cbap {

std::string_view to_string(Execution e)
{
    return e == Execution::serial ? "serial" : "parallel";
}

namespace detail {

void run_indexed(std::size_t count, Execution exec, void (*fn)(void*, std::size_t), void* ctx)
{
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < count; ++i)
            fn(ctx, i);
        return;
    }

    // exceptions must not escape an OpenMP region
    std::vector<std::exception_ptr> errors(count);
    const auto total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < total; ++i) {
        try {
            fn(ctx, static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e)
            std::rethrow_exception(e);
    }
}

} // namespace detail

std::vector<SimStats> simulate_batch(std::span<const SimJob> jobs, const MacParams& mac,
                                     const SlotDurations& slots, const SimOptions& opts,
                                     Execution exec)
{
    std::vector<SimStats> out(jobs.size());
    for_each_index(jobs.size(), exec, [&](std::size_t i) {
        out[i] = simulate_sector(jobs[i].n, mac, slots, jobs[i].stop, jobs[i].seed, opts);
    });
    return out;
}

} // namespace cbap
