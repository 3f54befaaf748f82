// SPDX-License-Identifier: Apache-2.0

#include "cbap/contention.hpp"
#include "cbap/markov_chain.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace cbap {

std::string_view to_string(SolverMethod m)
{
    switch (m) {
    case SolverMethod::closed_form:
        return "closed-form";
    case SolverMethod::numeric_chain:
        return "numeric-chain";
    }
    return "?";
}

SolverMethod parse_solver_method(std::string_view s)
{
    if (s == "closed-form")
        return SolverMethod::closed_form;
    if (s == "numeric-chain")
        return SolverMethod::numeric_chain;
    throw InvalidParameter("unknown solver method '" + std::string(s) + "'");
}

double p_of_tau(double tau, int n)
{
    if (n < 1)
        throw InvalidParameter("p_of_tau: n must be >= 1");
    if (!(tau >= 0.0 && tau <= 1.0))
        throw InvalidParameter("p_of_tau: tau must lie in [0, 1]");
    return 1.0 - std::pow(1.0 - tau, n - 1);
}

namespace {

// sum_{k=0}^{terms-1} x^k
double geometric_sum(double x, int terms)
{
    double sum = 0.0;
    double term = 1.0;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= x;
    }
    return sum;
}

ContentionSolution bisect(int n, SolverMethod method, const std::function<TauB00(double)>& tau_fn)
{
    if (n < 1)
        throw InvalidParameter("fixed point: n must be >= 1");

    ContentionSolution sol;
    sol.n = n;
    sol.method = method;

    auto residual = [&](double p) {
        return p - p_of_tau(tau_fn(p).tau, n);
    };

    if (n == 1) {
        const TauB00 t = tau_fn(0.0);
        sol.tau = t.tau;
        sol.b00 = t.b00;
        return sol;
    }

    double lo = 0.0;
    double hi = 1.0 - 1e-12;
    double g_lo = residual(lo);
    double g_hi = residual(hi);
    if (g_lo > 0.0 || g_hi < 0.0)
        throw SolverFailure("fixed point: no sign change on [0, 1)", std::min(std::abs(g_lo), std::abs(g_hi)));

    double mid = lo;
    double g_mid = g_lo;
    int it = 0;
    for (; it < kFixedPointMaxIterations; ++it) {
        mid = 0.5 * (lo + hi);
        g_mid = residual(mid);
        if (std::abs(g_mid) <= 1e-14 || hi - lo <= 1e-16)
            break;
        if (g_mid > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    if (!(std::abs(g_mid) <= kFixedPointTolerance))
        throw SolverFailure("fixed point: residual above tolerance after " + std::to_string(it) +
                                " iterations",
                            std::abs(g_mid));

    const TauB00 t = tau_fn(mid);
    sol.p = mid;
    sol.tau = t.tau;
    sol.b00 = t.b00;
    sol.residual = std::abs(g_mid);
    sol.iterations = it + 1;
    return sol;
}

} // namespace

TauB00 tau_of_p(double p, const MacParams& mac)
{
    mac.validate();
    if (!(p >= 0.0))
        throw InvalidParameter("tau_of_p: p must be >= 0");
    if (p >= 1.0)
        throw DomainError("tau_of_p: p must be < 1");

    const int m = mac.m;
    const int h = mac.h;
    const double w0 = mac.w0;

    // b00 = 2(1-2p)(1-p) / [W0(1-p)(1-(2p)^(m+1)) + (1-2p)(1-p^(m+1) + (2^m W0 + 1)(1-p^(H-m)))]
    // with numerator and denominator divided through by (1-2p).
    const double s2p = geometric_sum(2.0 * p, m + 1); // (1-(2p)^(m+1)) / (1-2p)
    const double den = w0 * (1.0 - p) * s2p + (1.0 - std::pow(p, m + 1)) +
                       (std::ldexp(w0, m) + 1.0) * (1.0 - std::pow(p, h - m));
    const double b00 = 2.0 * (1.0 - p) / den;
    const double tau = geometric_sum(p, m + 1) * b00; // (1-p^(m+1)) / (1-p) * b00
    return {tau, b00};
}

ContentionSolution solve_fixed_point(int n, const MacParams& mac)
{
    mac.validate();
    return bisect(n, SolverMethod::closed_form, [&](double p) { return tau_of_p(p, mac); });
}

ContentionSolution solve_markov_numeric(int n, const MacParams& mac)
{
    const BackoffChain chain(mac);
    return bisect(n, SolverMethod::numeric_chain, [&](double p) {
        const auto st = chain.stationary(p);
        return TauB00{st.tau, st.b00};
    });
}

ContentionSolution solve_contention(int n, const MacParams& mac, SolverMethod method)
{
    return method == SolverMethod::numeric_chain ? solve_markov_numeric(n, mac)
                                                 : solve_fixed_point(n, mac);
}

SlotProbabilities slot_probabilities(int n, double tau)
{
    if (n < 1)
        throw InvalidParameter("slot_probabilities: n must be >= 1");
    if (!(tau >= 0.0 && tau <= 1.0))
        throw InvalidParameter("slot_probabilities: tau must lie in [0, 1]");
    SlotProbabilities s;
    s.p_idle = std::pow(1.0 - tau, n);
    s.p_suc = n * tau * std::pow(1.0 - tau, n - 1);
    s.p_col = n == 1 ? 0.0 : std::max(0.0, 1.0 - s.p_suc - s.p_idle);
    return s;
}

double utilization_for_tau(int n, double tau, const SlotDurations& slots)
{
    if (n == 0)
        return 0.0;
    const SlotProbabilities s = slot_probabilities(n, tau);
    const double mean_slot = s.p_idle * slots.t_idle + s.p_suc * slots.t_suc + s.p_col * slots.t_col;
    return s.p_suc * slots.e_payload / mean_slot;
}

double sector_utilization(int n, const MacParams& mac, const SlotDurations& slots, SolverMethod method)
{
    if (n < 0)
        throw InvalidParameter("sector_utilization: n must be >= 0");
    if (n == 0)
        return 0.0;
    const ContentionSolution sol = solve_contention(n, mac, method);
    return utilization_for_tau(n, sol.tau, slots);
}

double network_utilization(std::span<const double> per_sector)
{
    if (per_sector.empty())
        throw InvalidParameter("network_utilization: no sectors");
    return std::accumulate(per_sector.begin(), per_sector.end(), 0.0) /
           static_cast<double>(per_sector.size());
}

} // namespace cbap
