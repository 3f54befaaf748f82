// SPDX-License-Identifier: Apache-2.0
//
// Quasi-omni sector formation: the greedy adaptive beamwidth pass and the
// equal-width baseline.

#pragma once

#include "cbap/contention.hpp"
#include "cbap/link_budget.hpp"
#include "cbap/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbap {

struct AllocatorConfig {
    double omega_min = deg_to_rad(20.0);
    double delta_omega = deg_to_rad(20.0);
    double omega_max = deg_to_rad(90.0);

    void validate() const;
};

struct SectorSpec {
    double start = 0.0;       ///< radians in [0, 2*pi)
    double width = 0.0;       ///< radians
    std::vector<int> members; ///< station ids, ascending

    bool operator==(const SectorSpec&) const = default;
};

enum class PlanKind { adaptive, fixed };

std::string_view to_string(PlanKind k);
PlanKind parse_plan_kind(std::string_view s);

struct SectorPlan {
    std::vector<SectorSpec> sectors;
    PlanKind kind = PlanKind::adaptive;
    std::vector<int> uncovered; ///< station ids left outside every sector

    std::size_t q() const { return sectors.size(); }
    bool operator==(const SectorPlan&) const = default;
};

/// Utilization of a sector holding n stations.
using UtilizationFn = std::function<double(int)>;

/// Counter-clockwise angular distance from `start` to `angle`, in [0, 2*pi).
/// Distances within 1e-12 of a full turn snap to 0.
double arc_offset(double angle, double start);

/// Ids of stations with angle in the half-open arc [start, start + width),
/// wrapping at 2*pi. width >= 2*pi selects every station.
std::vector<int> stas_in_arc(const Scenario& scenario, double start, double width);

/// Greedy adaptive pass. The first sector is anchored at the smallest
/// station angle; each sector starts at Omega_min and grows by DeltaOmega
/// while utilization does not drop and the width stays within Omega_max.
/// The next sector starts where the previous one ended, jumping ahead to the
/// next uncovered station when the Omega_min arc there is empty. The final
/// sector is truncated so the plan never exceeds one full turn.
SectorPlan allocate_adaptive(const Scenario& scenario, const AllocatorConfig& cfg,
                             const UtilizationFn& utilization);

SectorPlan allocate_adaptive(const Scenario& scenario, const AllocatorConfig& cfg,
                             const MacParams& mac, const SlotDurations& slots,
                             SolverMethod method = SolverMethod::closed_form);

/// 2*pi/width equal sectors starting at angle 0. Throws InvalidParameter
/// unless 2*pi/width is a positive integer within 1e-9.
SectorPlan allocate_fixed(const Scenario& scenario, double width);

/// Omega_max bounded by the link budget at the coverage radius.
double omega_max_from_link_budget(double radius, double rx_beamwidth, const std::string& mcs,
                                  const PhyEnv& env);

/// Human-readable invariant violations (empty when the plan is sound).
/// `cfg` enables the adaptive width checks.
std::vector<std::string> plan_violations(const SectorPlan& plan, const Scenario& scenario,
                                         const std::optional<AllocatorConfig>& cfg = std::nullopt);

} // namespace cbap
