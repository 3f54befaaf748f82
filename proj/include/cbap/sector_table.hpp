// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cbap/cbap_timing.hpp"
#include "cbap/contention.hpp"

#include <vector>

namespace cbap {

/// Per-sector quantities for every population 0..n_max, solved once.
/// Immutable after construction, so concurrent readers need no locking.
class SectorTable {
public:
    SectorTable(int n_max, const MacParams& mac, const SlotDurations& slots, SolverMethod method,
                IdleAccounting idle = IdleAccounting::per_request);

    int n_max() const { return static_cast<int>(utilization_.size()) - 1; }
    /// Channel utilization; 0 for an empty sector.
    double utilization(int n) const { return utilization_.at(static_cast<std::size_t>(n)); }
    /// Minimum CBAP duration with one request per member station.
    const CbapEstimate& cbap(int n) const { return cbap_.at(static_cast<std::size_t>(n)); }
    const ContentionSolution& solution(int n) const { return solution_.at(static_cast<std::size_t>(n)); }

private:
    std::vector<ContentionSolution> solution_;
    std::vector<double> utilization_;
    std::vector<CbapEstimate> cbap_;
};

} // namespace cbap
