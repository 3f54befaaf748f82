// SPDX-License-Identifier: Apache-2.0

#include "cbap/slot_sim.hpp"
#include "cbap/rng.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace cbap {

std::string_view to_string(BackoffClock c)
{
    return c == BackoffClock::virtual_slot ? "virtual-slot" : "idle-only";
}

BackoffClock parse_backoff_clock(std::string_view s)
{
    if (s == "virtual-slot")
        return BackoffClock::virtual_slot;
    if (s == "idle-only")
        return BackoffClock::idle_only;
    throw InvalidParameter("unknown backoff clock '" + std::string(s) + "'");
}

namespace {

struct Limits {
    std::uint64_t max_slots;
    std::uint64_t successes; // 0 = run the whole slot budget
};

Limits resolve(const StopRule& stop, std::size_t n)
{
    return std::visit(
        [n](const auto& rule) -> Limits {
            using T = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<T, SlotBudget>)
                return {rule.slots, 0};
            else if constexpr (std::is_same_v<T, SuccessTarget>)
                return {rule.max_slots, rule.successes};
            else
                return {rule.max_slots, rule.per_station * n};
        },
        stop);
}

} // namespace

SimStats simulate_sector(std::span<const int> ids, const MacParams& mac, const SlotDurations& slots,
                         const StopRule& stop, std::uint64_t seed, const SimOptions& opts)
{
    mac.validate();
    SimStats st;
    const std::size_t n = ids.size();
    if (n == 0)
        return st;

    const Limits lim = resolve(stop, n);
    const bool success_mode = std::holds_alternative<SuccessTarget>(stop) ||
                              std::holds_alternative<MemberRequests>(stop);
    if (success_mode && lim.successes == 0)
        return st;

    Rng rng(seed);
    std::vector<std::uint64_t> counter(n);
    std::vector<int> stage(n, 0);
    std::vector<std::uint64_t> wins(n, 0);
    std::vector<std::size_t> tx;
    tx.reserve(n);
    for (auto& c : counter)
        c = rng.below(static_cast<std::uint64_t>(mac.window(0)));

    std::uint64_t total = 0;
    auto done = [&] {
        if (success_mode && st.success_slots >= lim.successes)
            return true;
        return total >= lim.max_slots;
    };

    while (!done()) {
        // A run of idle slots lasts until the smallest counter reaches zero.
        const std::uint64_t lowest = *std::min_element(counter.begin(), counter.end());
        if (lowest > 0) {
            const std::uint64_t run = std::min(lowest, lim.max_slots - total);
            for (auto& c : counter)
                c -= run;
            st.idle_slots += run;
            total += run;
            continue;
        }

        tx.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (counter[j] == 0)
                tx.push_back(j);
        }
        const bool success = tx.size() == 1;
        st.attempts += tx.size();
        if (success) {
            ++st.success_slots;
            ++wins[tx.front()];
        } else {
            ++st.collision_slots;
            st.colliding_attempts += tx.size();
        }
        ++total;

        if (opts.clock == BackoffClock::virtual_slot) {
            for (auto& c : counter) {
                if (c > 0)
                    --c;
            }
        }
        for (std::size_t j : tx) {
            if (success) {
                stage[j] = 0;
            } else if (stage[j] == mac.h) {
                ++st.drops;
                stage[j] = 0;
            } else {
                ++stage[j];
            }
            counter[j] = rng.below(static_cast<std::uint64_t>(mac.window(stage[j])));
        }
    }

    st.budget_exhausted = success_mode && st.success_slots < lim.successes;
    for (std::size_t j = 0; j < n; ++j)
        st.per_station_successes[ids[j]] = wins[j];

    st.elapsed = static_cast<double>(st.idle_slots) * slots.t_idle +
                 static_cast<double>(st.success_slots) * slots.t_suc +
                 static_cast<double>(st.collision_slots) * slots.t_col;
    if (total > 0)
        st.empirical_tau = static_cast<double>(st.attempts) / (static_cast<double>(n) * static_cast<double>(total));
    if (st.attempts > 0)
        st.empirical_p = static_cast<double>(st.colliding_attempts) / static_cast<double>(st.attempts);
    if (st.elapsed > 0.0)
        st.utilization = static_cast<double>(st.success_slots) * slots.e_payload / st.elapsed;
    return st;
}

SimStats simulate_sector(int n, const MacParams& mac, const SlotDurations& slots, const StopRule& stop,
                         std::uint64_t seed, const SimOptions& opts)
{
    if (n < 1)
        throw InvalidParameter("simulate_sector: n must be >= 1");
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    return simulate_sector(std::span<const int>(ids), mac, slots, stop, seed, opts);
}

std::uint64_t sector_seed(std::uint64_t master, const SectorSpec& sector)
{
    std::uint64_t key = mix64(std::bit_cast<std::uint64_t>(sector.start));
    key = mix64(key ^ std::bit_cast<std::uint64_t>(sector.width));
    for (int id : sector.members)
        key = mix64(key ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)));
    return derive_seed(master, key);
}

std::vector<SimStats> simulate_plan(const SectorPlan& plan, const MacParams& mac,
                                    const SlotDurations& slots, const StopRule& stop,
                                    std::uint64_t master_seed, const SimOptions& opts)
{
    std::vector<SimStats> out;
    out.reserve(plan.sectors.size());
    for (const auto& sec : plan.sectors)
        out.push_back(simulate_sector(std::span<const int>(sec.members), mac, slots, stop,
                                      sector_seed(master_seed, sec), opts));
    return out;
}

} // namespace cbap
