// Acceptance suite: one PASS/FAIL line per criterion, supporting figures on
// indented lines below it. Exit status is nonzero when any criterion fails.

#include "cbap/experiments.hpp"
#include "cbap/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

using namespace cbap;

namespace {

int failures = 0;

void verdict(int id, bool pass, const std::string& what, double seconds)
{
    std::printf("%s  criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), seconds);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

template <typename... Args>
void detail(const char* fmt, Args... args)
{
    std::printf("      ");
    std::printf(fmt, args...);
    std::printf("\n");
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---- 1: simulator vs numeric chain -------------------------------------

void criterion_model_cross_validation()
{
    Stopwatch sw;
    const MacParams mac;
    const SlotDurations slots = slot_durations(TimingParams{});
    const std::vector<int> ns{2, 5, 10, 20, 50};
    constexpr int seeds = 20;
    constexpr std::uint64_t budget = 1'000'000;

    std::vector<SimJob> jobs;
    for (int n : ns) {
        for (int s = 0; s < seeds; ++s)
            jobs.push_back({n, derive_seed(0xACCE55, static_cast<std::uint64_t>(n) * 1000 + s), SlotBudget{budget}});
    }
    const auto stats = simulate_batch(jobs, mac, slots, {}, Execution::parallel);

    bool z_ok = true;
    bool u_ok = true;
    detail("%-4s %-11s %-11s %-8s %-11s %-11s %-8s %-9s", "n", "p_chain", "p_sim", "z_p", "tau_chain",
           "tau_sim", "z_tau", "U_relerr");
    for (std::size_t a = 0; a < ns.size(); ++a) {
        const int n = ns[a];
        std::vector<double> ps, taus, us;
        for (int s = 0; s < seeds; ++s) {
            const auto& st = stats[a * seeds + static_cast<std::size_t>(s)];
            ps.push_back(st.empirical_p);
            taus.push_back(st.empirical_tau);
            us.push_back(st.utilization);
        }
        const MeanStd mp = mean_std(ps);
        const MeanStd mt = mean_std(taus);
        const MeanStd mu = mean_std(us);
        const double root = std::sqrt(static_cast<double>(seeds));
        const auto chain = solve_markov_numeric(n, mac);
        const double z_p = (mp.mean - chain.p) / (mp.stddev / root);
        const double z_tau = (mt.mean - chain.tau) / (mt.stddev / root);
        const double u_model = utilization_for_tau(n, chain.tau, slots);
        const double u_rel = std::abs(u_model - mu.mean) / mu.mean;
        z_ok = z_ok && std::abs(z_p) <= 3.0 && std::abs(z_tau) <= 3.0;
        u_ok = u_ok && u_rel <= 0.05;
        detail("%-4d %-11.7f %-11.7f %-8.2f %-11.7f %-11.7f %-8.2f %-9.5f", n, chain.p, mp.mean, z_p, chain.tau,
               mt.mean, z_tau, u_rel);
    }
    detail("p and tau within 3 SE: %s; utilization within 5%%: %s", z_ok ? "yes" : "no", u_ok ? "yes" : "no");
    verdict(1, z_ok && u_ok, "slot simulator vs numeric chain (20 seeds x 1e6 slots)", sw.seconds());
}

// ---- 2: utilization trend ------------------------------------------------

void criterion_utilization_trend()
{
    Stopwatch sw;
    const MacParams mac;
    const SlotDurations slots = slot_durations(TimingParams{});
    std::map<int, double> u, closed;
    for (int n = 1; n <= 60; ++n) {
        u[n] = sector_utilization(n, mac, slots, SolverMethod::numeric_chain);
        closed[n] = sector_utilization(n, mac, slots, SolverMethod::closed_form);
    }
    bool decreasing = true;
    for (int n = 6; n <= 60; ++n)
        decreasing = decreasing && u[n] < u[n - 1];
    const bool ratio = u[50] < 0.6 * u[5];
    detail("numeric chain: U(5)=%.6f U(20)=%.6f U(50)=%.6f U(50)/U(5)=%.3f", u[5], u[20], u[50], u[50] / u[5]);
    detail("closed form (informational): U(5)=%.6f U(20)=%.6f U(50)=%.6f", closed[5], closed[20], closed[50]);
    verdict(2, decreasing && ratio, "U(n) strictly decreasing for n >= 5 and U(50) < 0.6 U(5)", sw.seconds());
}

// ---- 3 and 4: adaptive vs fixed ------------------------------------------

void report_comparison(const char* label, const ComparisonReport& rep)
{
    for (const auto& a : rep.aggregates)
        detail("%s n=%-3d runs=%zu uplift=%+.2f%% reduction=%+.2f%% Q_adaptive=%.2f", label, a.n, a.runs,
               100.0 * a.uplift.mean, 100.0 * a.reduction.mean, a.q_adaptive.mean);
}

void criteria_comparison()
{
    Stopwatch sw;
    const ExperimentConfig cfg = table1_config(); // 200 seeds, n = 10..50
    const auto rep = run_comparison(cfg, Execution::parallel);
    report_comparison("", rep);

    std::size_t failed = 0;
    for (const auto& a : rep.aggregates)
        failed += a.failures;
    const auto& last = rep.aggregates.back();

    bool uplift_positive = true;
    for (const auto& a : rep.aggregates) {
        if (a.n >= 20)
            uplift_positive = uplift_positive && a.uplift.mean > 0.0;
    }
    const bool band3 = last.n == 50 && last.uplift.mean >= 0.10 && last.uplift.mean <= 0.45;
    const double t3 = sw.seconds();

    bool growing = true;
    for (std::size_t i = 1; i < rep.aggregates.size(); ++i)
        growing = growing && rep.aggregates[i].reduction.mean > rep.aggregates[i - 1].reduction.mean;
    const bool band4 = last.n == 50 && last.reduction.mean >= 0.25 && last.reduction.mean <= 0.65;

    // Alternative readings, for reference only.
    ExperimentConfig per_frame = cfg;
    per_frame.idle = IdleAccounting::per_frame;
    per_frame.n_values = {10, 50};
    report_comparison("[per-frame idle, informational]", run_comparison(per_frame));
    ExperimentConfig closed = cfg;
    closed.method = SolverMethod::closed_form;
    closed.n_values = {10, 50};
    report_comparison("[closed form, informational]", run_comparison(closed));

    detail("failed runs excluded: %zu", failed);
    verdict(3, band3 && uplift_positive && failed == 0,
            "mean uplift at n=50 in [10%, 45%] and positive for every n >= 20 (200 seeds)", t3);
    verdict(4, band4 && growing && failed == 0,
            "mean CBAP reduction at n=50 in [25%, 65%] and growing with n (200 seeds)", sw.seconds());
}

// ---- 5: link budget --------------------------------------------------------

void criterion_link_budget()
{
    Stopwatch sw;
    const PhyEnv env;
    const double rx = deg_to_rad(60.0);
    const auto lim = max_tx_beamwidth(5.0, rx, "MCS0", env);
    const double deg = rad_to_deg(lim.beamwidth);
    const double back = received_power(5.0, lim.beamwidth, rx, env);
    const double err = std::abs(back - env.sensitivity_dbm("MCS0"));
    detail("max tx beamwidth = %.4f deg (%.5f rad); round-trip error = %.3g dB", deg, lim.beamwidth, err);
    verdict(5, std::abs(deg - 54.5) <= 0.5 && err <= 1e-9 && lim.status == BeamwidthLimit::Status::ok,
            "MCS0, 5 m, rx 60 deg gives 54.5 +/- 0.5 deg; round trip within 1e-9 dB", sw.seconds());
}

// ---- 6: invariant suites -------------------------------------------------

void criterion_invariants()
{
    Stopwatch sw;
    const MacParams mac;
    const SlotDurations slots = slot_durations(TimingParams{});
    bool ok = true;
    auto check = [&](bool cond, const char* what) {
        detail("%-58s %s", what, cond ? "ok" : "VIOLATED");
        ok = ok && cond;
    };

    double worst_norm = 0.0;
    for (int n = 1; n <= 100; ++n) {
        for (int k = 0; k <= 1000; ++k) {
            const double tau = k / 1000.0;
            const auto s = slot_probabilities(n, tau);
            worst_norm = std::max(worst_norm, std::abs(s.p_idle + s.p_suc + s.p_col - 1.0));
            if (tau > 0.0) {
                const auto b = busy_slot_probabilities(n, tau);
                worst_norm = std::max(worst_norm, std::abs(b.success + b.collision - 1.0));
            }
        }
    }
    check(worst_norm <= 1e-12, "slot and busy-slot probabilities sum to 1 +/- 1e-12");

    double worst_residual = 0.0;
    for (int n = 1; n <= 60; ++n) {
        for (auto method : {SolverMethod::closed_form, SolverMethod::numeric_chain}) {
            const auto sol = solve_contention(n, mac, method);
            worst_residual = std::max(worst_residual, std::abs(sol.p - p_of_tau(sol.tau, n)));
        }
    }
    check(worst_residual <= 1e-10, "fixed-point residuals <= 1e-10 (both methods, n=1..60)");

    const SectorTable table(120, mac, slots, SolverMethod::numeric_chain);
    const AllocatorConfig alloc;
    int bad_plans = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        GeometryConfig g;
        g.seed = derive_seed(6, i);
        g.n = static_cast<int>(i % 121);
        g.angle_std = deg_to_rad(i % 4 == 0 ? 15.0 : 90.0);
        const Scenario sc = generate_scenario(g);
        const auto adaptive = allocate_adaptive(sc, alloc, [&](int k) { return table.utilization(k); });
        const auto fixed = allocate_fixed(sc, deg_to_rad(90.0));
        std::size_t members = 0;
        for (const auto& s : adaptive.sectors)
            members += s.members.size();
        const bool partition = members + adaptive.uncovered.size() == sc.size();
        if (!plan_violations(adaptive, sc, alloc).empty() || !plan_violations(fixed, sc).empty() || !partition)
            ++bad_plans;
    }
    detail("plans with violations: %d of 1000", bad_plans);
    check(bad_plans == 0, "plan partition invariants on 1000 random scenarios");

    GeometryConfig g;
    g.seed = 99;
    const bool same_scenario = generate_scenario(g) == generate_scenario(g);
    const bool same_sim = simulate_sector(20, mac, slots, SlotBudget{200000}, 5) ==
                          simulate_sector(20, mac, slots, SlotBudget{200000}, 5);
    ExperimentConfig cfg = table1_config();
    cfg.n_values = {20, 50};
    cfg.seeds.resize(10);
    const bool same_compare =
        run_comparison(cfg, Execution::serial).rows == run_comparison(cfg, Execution::parallel).rows;
    check(same_scenario && same_sim && same_compare, "seed determinism (bit-identical reruns, serial = parallel)");

    const bool backoff = expected_backoff_slots(0, mac) == 4.0 && expected_backoff_slots(1, mac) == 12.0 &&
                         expected_backoff_slots(4, mac) == 92.0;
    check(backoff, "expected_backoff_slots stages 0, 1, 4 = {4, 12, 92}");
    const double hi = expected_idle_slots(1.0 - 1e-12, mac);
    const bool idle = expected_idle_slots(0.0, mac) == 4.0 && std::abs(hi - 124.0) <= 1e-9;
    check(idle, "expected_idle_slots limits p=0 -> 4, p->1 -> 124");

    verdict(6, ok, "invariant suites", sw.seconds());
}

} // namespace

int main()
{
    std::printf("CBAP acceptance suite\n");
    criterion_model_cross_validation();
    criterion_utilization_trend();
    criteria_comparison();
    criterion_link_budget();
    criterion_invariants();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
