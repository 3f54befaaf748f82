// SPDX-License-Identifier: Apache-2.0

#include "cbap/cbap_timing.hpp"

#include <cmath>

namespace cbap {

std::string_view to_string(IdleAccounting a)
{
    return a == IdleAccounting::per_request ? "per-request" : "per-frame";
}

IdleAccounting parse_idle_accounting(std::string_view s)
{
    if (s == "per-request")
        return IdleAccounting::per_request;
    if (s == "per-frame")
        return IdleAccounting::per_frame;
    throw InvalidParameter("unknown idle accounting '" + std::string(s) + "'");
}

double expected_backoff_slots(int stage, const MacParams& mac)
{
    mac.validate();
    if (stage < 0 || stage > mac.h)
        throw InvalidParameter("expected_backoff_slots: stage out of [0, H]");
    double sum = 0.0;
    for (int k = 0; k <= std::min(stage, mac.m); ++k)
        sum += std::ldexp(static_cast<double>(mac.w0), k);
    if (stage > mac.m)
        sum += static_cast<double>(stage - mac.m) * mac.w_max();
    return 0.5 * sum;
}

double expected_idle_slots(double p, const MacParams& mac)
{
    if (!(p >= 0.0 && p < 1.0))
        throw InvalidParameter("expected_idle_slots: p must lie in [0, 1)");
    double total = 0.0;
    double reach = 1.0; // p^i
    for (int i = 0; i < mac.h; ++i) {
        total += reach * (1.0 - p) * expected_backoff_slots(i, mac);
        reach *= p;
    }
    return total + reach * expected_backoff_slots(mac.h, mac);
}

BusySlotProbabilities busy_slot_probabilities(int n, double tau)
{
    if (!(tau > 0.0))
        throw DomainError("busy_slot_probabilities: tau = 0 leaves no busy slots");
    const SlotProbabilities s = slot_probabilities(n, tau);
    const double busy = 1.0 - s.p_idle;
    BusySlotProbabilities b;
    b.success = s.p_suc / busy;
    b.collision = n == 1 ? 0.0 : 1.0 - b.success;
    return b;
}

double min_busy_slots(double requests, double p_suc_busy)
{
    if (!(p_suc_busy > 0.0))
        throw DomainError("min_busy_slots: zero conditional success probability");
    return requests / p_suc_busy;
}

CbapEstimate cbap_from_solution(int requests, int n, double p, double tau, const MacParams& mac,
                                const SlotDurations& slots, IdleAccounting idle)
{
    if (requests < 0)
        throw InvalidParameter("min_cbap_duration: requests must be >= 0");
    CbapEstimate e;
    if (requests == 0)
        return e;
    if (n < 1)
        throw InvalidParameter("min_cbap_duration: requests need at least one station");

    e.p = p;
    e.tau = tau;
    e.idle_per_frame = expected_idle_slots(p, mac);
    e.n_id = idle == IdleAccounting::per_request ? requests * e.idle_per_frame : e.idle_per_frame;

    const BusySlotProbabilities b = busy_slot_probabilities(n, tau);
    e.t_b = b.success * slots.t_suc + b.collision * slots.t_col;
    e.n_b_min = min_busy_slots(requests, b.success);
    e.t_cbap = e.n_id * slots.t_idle + e.n_b_min * e.t_b;
    return e;
}

CbapEstimate min_cbap_duration(int requests, int n, const MacParams& mac, const SlotDurations& slots,
                               SolverMethod method, IdleAccounting idle)
{
    if (requests <= 0)
        return cbap_from_solution(requests, n, 0.0, 0.0, mac, slots, idle);
    const ContentionSolution sol = solve_contention(n, mac, method);
    return cbap_from_solution(requests, n, sol.p, sol.tau, mac, slots, idle);
}

} // namespace cbap
