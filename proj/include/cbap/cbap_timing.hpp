// SPDX-License-Identifier: Apache-2.0
//
// Minimum CBAP duration needed to deliver N requests in one sector:
// T_CBAP = n_id * T_idle + n_b[min] * T_b.

#pragma once

#include "cbap/contention.hpp"
#include "cbap/model.hpp"

#include <string_view>

namespace cbap {

/// How expected backoff (idle) slots aggregate over the N requests.
///
/// `per_request`: each delivered frame pays its own expected backoff, so
/// n_id = N * E[idle slots per frame]. `per_frame`: n_id is the single
/// per-frame expectation regardless of N.
enum class IdleAccounting { per_request, per_frame };

std::string_view to_string(IdleAccounting a);
IdleAccounting parse_idle_accounting(std::string_view s);

struct CbapEstimate {
    double p = 0.0;
    double tau = 0.0;
    double idle_per_frame = 0.0; ///< expected backoff slots for one frame
    double n_id = 0.0;           ///< idle slots entering T_CBAP
    double n_b_min = 0.0;        ///< busy slots, fractional expected count
    double t_b = 0.0;            ///< mean busy-slot duration (s)
    double t_cbap = 0.0;         ///< seconds
};

/// Half the cumulative window up to `stage`; windows stop doubling at m.
double expected_backoff_slots(int stage, const MacParams& mac);

/// sum_{i<H} p^i (1-p) E[B_i] + p^H E[B_H].
double expected_idle_slots(double p, const MacParams& mac);

struct BusySlotProbabilities {
    double success = 0.0;
    double collision = 0.0;
};

/// Outcome probabilities conditioned on a busy slot. Throws DomainError
/// for tau = 0 (no busy slots exist).
BusySlotProbabilities busy_slot_probabilities(int n, double tau);

/// N / p_suc|busy. Throws DomainError when p_suc|busy is zero.
double min_busy_slots(double requests, double p_suc_busy);

CbapEstimate min_cbap_duration(int requests, int n, const MacParams& mac, const SlotDurations& slots,
                               SolverMethod method = SolverMethod::closed_form,
                               IdleAccounting idle = IdleAccounting::per_request);

/// Same computation from an already solved (p, tau).
CbapEstimate cbap_from_solution(int requests, int n, double p, double tau, const MacParams& mac,
                                const SlotDurations& slots, IdleAccounting idle);

} // namespace cbap
