// SPDX-License-Identifier: Apache-2.0
//
// Saturation model of CSMA/CA inside one quasi-omni sector: the tau/p
// fixed point, slot outcome probabilities and channel utilization.

#pragma once

#include "cbap/model.hpp"

#include <span>
#include <string>
#include <string_view>

namespace cbap {

/// Which tau(p) relation closes the fixed point.
///
/// `closed_form` evaluates the closed form for b00 and
/// tau = (1 - p^(m+1)) / (1 - p) * b00 verbatim. `numeric_chain` solves
/// the stationary distribution of the per-station backoff chain
/// (stages 0..H, uniform backoff on [0, W_i - 1]) directly.
enum class SolverMethod { closed_form, numeric_chain };

std::string_view to_string(SolverMethod m);
/// Accepts "closed-form" / "numeric-chain". Throws InvalidParameter.
SolverMethod parse_solver_method(std::string_view s);

struct ContentionSolution {
    int n = 0;
    double p = 0.0;   ///< conditional collision probability
    double tau = 0.0; ///< per-slot transmission probability
    double b00 = 0.0; ///< stationary probability of state (0, 0)
    SolverMethod method = SolverMethod::closed_form;
    double residual = 0.0; ///< |p - p_of_tau(tau(p), n)|
    int iterations = 0;
};

struct SlotProbabilities {
    double p_idle = 1.0;
    double p_suc = 0.0;
    double p_col = 0.0;
};

struct TauB00 {
    double tau = 0.0;
    double b00 = 0.0;
};

inline constexpr double kFixedPointTolerance = 1e-10;
inline constexpr int kFixedPointMaxIterations = 200;

/// p = 1 - (1 - tau)^(n - 1).
double p_of_tau(double tau, int n);

/// Closed-form tau(p) and b00. The (1-(2p)^(m+1))/(1-2p) and
/// (1-p^(m+1))/(1-p) ratios are evaluated as finite geometric sums, so
/// p = 0.5 and p = 0 need no special casing. Throws DomainError for p >= 1.
TauB00 tau_of_p(double p, const MacParams& mac);

/// Bisection on g(p) = p - p_of_tau(tau_of_p(p), n) over [0, 1 - 1e-12].
ContentionSolution solve_fixed_point(int n, const MacParams& mac);

/// Same loop with tau(p) taken from the numerically solved backoff chain.
ContentionSolution solve_markov_numeric(int n, const MacParams& mac);

ContentionSolution solve_contention(int n, const MacParams& mac, SolverMethod method);

SlotProbabilities slot_probabilities(int n, double tau);

/// Utilization for an already solved tau. n = 0 gives 0.
double utilization_for_tau(int n, double tau, const SlotDurations& slots);

/// Channel utilization of a sector holding n saturated stations.
double sector_utilization(int n, const MacParams& mac, const SlotDurations& slots,
                          SolverMethod method = SolverMethod::closed_form);

/// Mean of per-sector utilizations (equal CBAP share per sector).
double network_utilization(std::span<const double> per_sector);

} // namespace cbap
