// SPDX-License-Identifier: Apache-2.0
//
// Slot-level Monte Carlo of saturated CSMA/CA with binary exponential
// backoff and a retry limit, one sector at a time.

#pragma once

#include "cbap/beam_allocator.hpp"
#include "cbap/model.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace cbap {

/// When a waiting station's backoff counter advances.
///
/// `virtual_slot`: once per channel slot, idle or busy; a busy slot counts
/// as one slot whose duration is the frozen period (the clock the Markov
/// chain is written in). `idle_only`: only idle slots decrement.
enum class BackoffClock { virtual_slot, idle_only };

std::string_view to_string(BackoffClock c);
BackoffClock parse_backoff_clock(std::string_view s);

struct SlotBudget {
    std::uint64_t slots = 1'000'000;
};

struct SuccessTarget {
    std::uint64_t successes = 1;
    std::uint64_t max_slots = 100'000'000;
};

/// Success target of `per_station` deliveries per station in the sector.
struct MemberRequests {
    std::uint64_t per_station = 1;
    std::uint64_t max_slots = 100'000'000;
};

using StopRule = std::variant<SlotBudget, SuccessTarget, MemberRequests>;

struct SimOptions {
    BackoffClock clock = BackoffClock::virtual_slot;
};

struct SimStats {
    std::uint64_t idle_slots = 0;
    std::uint64_t success_slots = 0;
    std::uint64_t collision_slots = 0;
    std::uint64_t attempts = 0;
    std::uint64_t colliding_attempts = 0;
    std::uint64_t drops = 0;
    double elapsed = 0.0; ///< seconds
    std::map<int, std::uint64_t> per_station_successes;
    double empirical_tau = 0.0;
    double empirical_p = 0.0;
    double utilization = 0.0;
    bool budget_exhausted = false; ///< success target not reached within max_slots

    std::uint64_t total_slots() const { return idle_slots + success_slots + collision_slots; }
    bool operator==(const SimStats&) const = default;
};

/// Simulates the stations `ids` contending in one sector.
SimStats simulate_sector(std::span<const int> ids, const MacParams& mac, const SlotDurations& slots,
                         const StopRule& stop, std::uint64_t seed, const SimOptions& opts = {});

/// Stations are numbered 0..n-1. Requires n >= 1.
SimStats simulate_sector(int n, const MacParams& mac, const SlotDurations& slots,
                         const StopRule& stop, std::uint64_t seed, const SimOptions& opts = {});

/// Seed of a sector, keyed by its geometry and membership (not its position
/// in the plan).
std::uint64_t sector_seed(std::uint64_t master, const SectorSpec& sector);

/// One independent run per sector; empty sectors yield all-zero stats.
std::vector<SimStats> simulate_plan(const SectorPlan& plan, const MacParams& mac,
                                    const SlotDurations& slots, const StopRule& stop,
                                    std::uint64_t master_seed, const SimOptions& opts = {});

} // namespace cbap
