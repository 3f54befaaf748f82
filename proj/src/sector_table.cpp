// SPDX-License-Identifier: Apache-2.0

#include "cbap/sector_table.hpp"

namespace cbap {

SectorTable::SectorTable(int n_max, const MacParams& mac, const SlotDurations& slots,
                         SolverMethod method, IdleAccounting idle)
{
    if (n_max < 0)
        throw InvalidParameter("SectorTable: n_max must be >= 0");
    const auto size = static_cast<std::size_t>(n_max) + 1;
    solution_.resize(size);
    utilization_.assign(size, 0.0);
    cbap_.resize(size);
    for (int n = 1; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        solution_[i] = solve_contention(n, mac, method);
        utilization_[i] = utilization_for_tau(n, solution_[i].tau, slots);
        cbap_[i] = cbap_from_solution(n, n, solution_[i].p, solution_[i].tau, mac, slots, idle);
    }
}

} // namespace cbap
