// Independent reference computations used by the unit and acceptance tests.
// Written from the model definitions directly, without calling the library
// routine under test.

#pragma once

#include <cmath>
#include <vector>

namespace oracle {

constexpr double pi = 3.14159265358979323846;

// MAC: W0 = 8, m = 3, H = 5.
constexpr int w0 = 8;
constexpr int m = 3;
constexpr int h = 5;

inline int window(int stage)
{
    return w0 * (1 << (stage < m ? stage : m));
}

// Default timing, all in microseconds, each term written out by hand.
constexpr double rts_us = 20 * 8 / 27.5;  // 5.8182
constexpr double cts_us = 26 * 8 / 27.5;  // 7.5636
constexpr double ack_us = 14 * 8 / 27.5;  // 4.0727
constexpr double data_us = 1024 * 8 / 1150.0; // 7.1235
constexpr double t_idle_us = 2.5 + 4.0;
constexpr double t_suc_us = rts_us + 2.5 + cts_us + 2.5 + 13.5 + data_us + ack_us;
constexpr double t_col_us = rts_us + 2.5 + 13.5 + cts_us;

// The closed-form b00 written exactly as the rational expression, valid
// away from p = 0.5.
inline double closed_form_b00(double p)
{
    const double num = 2.0 * (1.0 - 2.0 * p) * (1.0 - p);
    const double den = w0 * (1.0 - p) * (1.0 - std::pow(2.0 * p, m + 1)) +
                       (1.0 - 2.0 * p) * (1.0 - std::pow(p, m + 1)) +
                       (1.0 - 2.0 * p) * ((1 << m) * w0 + 1.0) * (1.0 - std::pow(p, h - m));
    return num / den;
}

inline double closed_form_tau(double p)
{
    return (1.0 - std::pow(p, m + 1)) / (1.0 - p) * closed_form_b00(p);
}

// Renewal-reward form of the backoff chain: per packet, stage i is reached
// with probability p^i; each visit spends (W_i - 1)/2 countdown slots on
// average plus one transmission slot.
inline double chain_tau(double p)
{
    double tx = 0.0;
    double slots = 0.0;
    double reach = 1.0;
    for (int i = 0; i <= h; ++i) {
        tx += reach;
        slots += reach * (window(i) + 1) / 2.0;
        reach *= p;
    }
    return tx / slots;
}

// Brute-force stationary distribution of the chain by power iteration on the
// dense transition matrix, returning tau = sum_i b(i, 0).
inline double chain_tau_power_iteration(double p, int iterations = 5000)
{
    std::vector<int> offset;
    int states = 0;
    for (int i = 0; i <= h; ++i) {
        offset.push_back(states);
        states += window(i);
    }
    std::vector<double> pi_v(static_cast<std::size_t>(states), 1.0 / states);
    std::vector<double> next(pi_v.size());
    for (int it = 0; it < iterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i <= h; ++i) {
            for (int k = 0; k < window(i); ++k) {
                const double mass = pi_v[static_cast<std::size_t>(offset[i] + k)];
                if (k > 0) {
                    next[static_cast<std::size_t>(offset[i] + k - 1)] += mass;
                    continue;
                }
                const int fail_stage = i < h ? i + 1 : 0;
                for (int j = 0; j < window(0); ++j)
                    next[static_cast<std::size_t>(offset[0] + j)] += mass * (1.0 - p) / window(0);
                for (int j = 0; j < window(fail_stage); ++j)
                    next[static_cast<std::size_t>(offset[fail_stage] + j)] += mass * p / window(fail_stage);
            }
        }
        pi_v.swap(next);
    }
    double tau = 0.0;
    for (int i = 0; i <= h; ++i)
        tau += pi_v[static_cast<std::size_t>(offset[i])];
    return tau;
}

inline double utilization(int n, double tau)
{
    const double idle = std::pow(1.0 - tau, n);
    const double suc = n * tau * std::pow(1.0 - tau, n - 1);
    const double col = 1.0 - idle - suc;
    return suc * data_us / (idle * t_idle_us + suc * t_suc_us + col * t_col_us);
}

// Fixed point p = 1 - (1 - tau(p))^(n-1) by plain bisection.
template <typename TauFn>
double fixed_point_p(int n, TauFn tau_fn)
{
    double lo = 0.0;
    double hi = 1.0 - 1e-12;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = mid - (1.0 - std::pow(1.0 - tau_fn(mid), n - 1));
        (g > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle
