// SPDX-License-Identifier: Apache-2.0
//
// cbap: command-line front end for the contention, link-budget and sector
// allocation models. Exit status: 0 success, 1 validation failure, 2 bad input.

#include "cbap/experiments.hpp"
#include "cbap/plan_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace cbap;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBadInput = 2;

// Thrown for unusable command-line input that CLI11 itself cannot catch.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::string out;
    std::string method;
    std::string idle;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("-c,--config", c.config, "JSON config file (\"defaults\": \"table1\" or \"none\")")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", c.out, "Output path (default: stdout)");
    sub->add_option("--method", c.method, "closed-form | numeric-chain");
    sub->add_option("--idle-accounting", c.idle, "per-request | per-frame");
}

ExperimentConfig load(const Common& c)
{
    ExperimentConfig cfg = c.config.empty() ? table1_config() : load_config(c.config);
    try {
        if (!c.method.empty())
            cfg.method = parse_solver_method(c.method);
        if (!c.idle.empty())
            cfg.idle = parse_idle_accounting(c.idle);
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

// Writes to --out, or to stdout when no path was given.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw UsageError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"CBAP contention, beamwidth allocation and link-budget toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cbap 1.0.0");

    std::function<int()> action;

    // ---- sweep-utilization ------------------------------------------------
    Common sweep_c;
    int sweep_min = 1, sweep_max = 50;
    std::vector<int> sweep_ns;
    auto* sweep = app.add_subcommand("sweep-utilization", "Analytic sector utilization U(n)");
    add_common(sweep, sweep_c);
    sweep->add_option("--n-min", sweep_min, "First n of the range")->check(CLI::NonNegativeNumber);
    sweep->add_option("--n-max", sweep_max, "Last n of the range")->check(CLI::NonNegativeNumber);
    sweep->add_option("--n", sweep_ns, "Explicit n values (overrides the range)");
    sweep->callback([&] {
        action = [&] {
            const ExperimentConfig cfg = load(sweep_c);
            std::vector<int> ns = sweep_ns;
            if (ns.empty()) {
                if (sweep_min > sweep_max)
                    throw UsageError("--n-min must not exceed --n-max");
                for (int n = sweep_min; n <= sweep_max; ++n)
                    ns.push_back(n);
            }
            const auto rows = run_utilization_sweep(ns, cfg);
            Output out(sweep_c.out);
            write_sweep_csv(out.stream(), rows);
            int failed = 0;
            for (const auto& r : rows) {
                if (r.error) {
                    std::cerr << "n=" << r.n << ": " << *r.error << '\n';
                    ++failed;
                }
            }
            return failed ? kExitFailed : kExitOk;
        };
    });

    // ---- compare ----------------------------------------------------------
    Common cmp_c;
    std::vector<int> cmp_ns;
    std::vector<std::uint64_t> cmp_seed_list;
    int cmp_seeds = 0;
    double cmp_fixed_deg = 0.0;
    std::string cmp_summary;
    bool cmp_serial = false;
    auto* cmp = app.add_subcommand("compare", "Adaptive vs fixed-width sectors over random scenarios");
    add_common(cmp, cmp_c);
    cmp->add_option("--n", cmp_ns, "Station counts to sweep");
    auto* seeds_opt = cmp->add_option("--seeds", cmp_seeds, "Use seeds 1..K")->check(CLI::PositiveNumber);
    cmp->add_option("--seed-list", cmp_seed_list, "Explicit scenario seeds")->excludes(seeds_opt);
    cmp->add_option("--fixed-width", cmp_fixed_deg, "Fixed sector width (deg)")->check(CLI::PositiveNumber);
    cmp->add_option("--summary", cmp_summary, "Write mean/std aggregates here (default: stderr)");
    cmp->add_flag("--serial", cmp_serial, "Disable OpenMP");
    cmp->callback([&] {
        action = [&] {
            ExperimentConfig cfg = load(cmp_c);
            if (!cmp_ns.empty())
                cfg.n_values = cmp_ns;
            if (cmp_seeds > 0) {
                cfg.seeds.clear();
                for (int s = 1; s <= cmp_seeds; ++s)
                    cfg.seeds.push_back(static_cast<std::uint64_t>(s));
            }
            if (!cmp_seed_list.empty())
                cfg.seeds = cmp_seed_list;
            if (cmp_fixed_deg > 0.0)
                cfg.fixed_width = deg_to_rad(cmp_fixed_deg);
            try {
                cfg.validate();
            } catch (const InvalidParameter& e) {
                throw UsageError(e.what());
            }

            const auto rep = run_comparison(cfg, cmp_serial ? Execution::serial : Execution::parallel);
            Output out(cmp_c.out);
            write_comparison_csv(out.stream(), rep.rows);
            for (const auto& r : rep.rows) {
                if (r.error)
                    std::cerr << "n=" << r.n << " seed=" << r.seed << ": " << *r.error << '\n';
            }
            if (cmp_summary.empty()) {
                write_comparison_summary_csv(std::cerr, rep.aggregates);
            } else {
                Output s(cmp_summary);
                write_comparison_summary_csv(s.stream(), rep.aggregates);
            }
            return kExitOk;
        };
    });

    // ---- link-budget ------------------------------------------------------
    Common lb_c;
    std::vector<std::string> lb_mcs{"MCS0", "MCS4"};
    std::vector<double> lb_d{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<double> lb_rx;
    auto* lb = app.add_subcommand("link-budget", "Widest transmit beam meeting the MCS sensitivity");
    add_common(lb, lb_c);
    lb->add_option("--mcs", lb_mcs, "MCS names with a configured sensitivity");
    lb->add_option("--d", lb_d, "Distances (m)")->check(CLI::PositiveNumber);
    lb->add_option("--rx", lb_rx, "Receive beamwidths (deg); default 10..360 step 10")
        ->check(CLI::Range(0.0, 360.0));
    lb->callback([&] {
        action = [&] {
            const ExperimentConfig cfg = load(lb_c);
            std::vector<double> rx = lb_rx;
            if (rx.empty()) {
                for (int r = 10; r <= 360; r += 10)
                    rx.push_back(r);
            }
            const auto table = run_linkbudget_curves(cfg, lb_mcs, lb_d, rx);
            for (const auto& m : table.skipped_mcs)
                std::cerr << "skipped unknown MCS: " << m << '\n';
            Output out(lb_c.out);
            write_linkbudget_csv(out.stream(), table.rows);
            return table.rows.empty() ? kExitBadInput : kExitOk;
        };
    });

    // ---- cbap-time --------------------------------------------------------
    Common ct_c;
    std::vector<int> ct_n;
    int ct_requests = -1;
    auto* ct = app.add_subcommand("cbap-time", "Minimum CBAP duration for a sector");
    add_common(ct, ct_c);
    ct->add_option("--n", ct_n, "Stations in the sector")->required()->check(CLI::NonNegativeNumber);
    ct->add_option("--requests", ct_requests, "Requests to deliver (default: n)")->check(CLI::NonNegativeNumber);
    ct->callback([&] {
        action = [&] {
            const ExperimentConfig cfg = load(ct_c);
            const SlotDurations slots = slot_durations(cfg.timing);
            Output out(ct_c.out);
            auto& os = out.stream();
            os << "n,requests,p,tau,idle_per_frame,n_id,n_b_min,t_b_us,t_cbap_us\n";
            for (int n : ct_n) {
                const int req = ct_requests >= 0 ? ct_requests : n;
                if (n == 0) {
                    if (req != 0)
                        throw UsageError("an empty sector cannot serve requests");
                    os << "0,0,0,0,0,0,0,0,0\n";
                    continue;
                }
                const auto e = min_cbap_duration(req, n, cfg.mac, slots, cfg.method, cfg.idle);
                os << n << ',' << req << ',' << format_number(e.p) << ',' << format_number(e.tau) << ','
                   << format_number(e.idle_per_frame) << ',' << format_number(e.n_id) << ','
                   << format_number(e.n_b_min) << ',' << format_number(e.t_b * 1e6) << ','
                   << format_number(e.t_cbap * 1e6) << '\n';
            }
            return kExitOk;
        };
    });

    // ---- allocate ---------------------------------------------------------
    Common al_c;
    std::string al_scenario;
    std::string al_kind = "adaptive";
    double al_width = 0.0, al_min = 0.0, al_delta = 0.0, al_max = 0.0;
    std::string al_link_mcs;
    auto* al = app.add_subcommand("allocate", "Build a sector plan for a scenario");
    add_common(al, al_c);
    al->add_option("--scenario", al_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    al->add_option("--kind", al_kind, "adaptive | fixed");
    al->add_option("--width", al_width, "Fixed sector width (deg)")->check(CLI::PositiveNumber);
    al->add_option("--omega-min", al_min, "Initial sector width (deg)")->check(CLI::PositiveNumber);
    al->add_option("--delta-omega", al_delta, "Growth step (deg)")->check(CLI::PositiveNumber);
    al->add_option("--omega-max", al_max, "Widest sector (deg)")->check(CLI::PositiveNumber);
    al->add_option("--omega-max-from-mcs", al_link_mcs,
                   "Derive the widest sector from the link budget at the scenario radius");
    al->callback([&] {
        action = [&] {
            ExperimentConfig cfg = load(al_c);
            const Scenario sc = load_scenario(al_scenario);
            if (al_min > 0.0)
                cfg.allocator.omega_min = deg_to_rad(al_min);
            if (al_delta > 0.0)
                cfg.allocator.delta_omega = deg_to_rad(al_delta);
            if (al_max > 0.0)
                cfg.allocator.omega_max = deg_to_rad(al_max);
            if (al_width > 0.0)
                cfg.fixed_width = deg_to_rad(al_width);
            if (!al_link_mcs.empty())
                cfg.allocator.omega_max =
                    omega_max_from_link_budget(sc.radius, cfg.rx_beamwidth, al_link_mcs, cfg.env);

            PlanKind kind;
            try {
                kind = parse_plan_kind(al_kind);
                cfg.allocator.validate();
            } catch (const InvalidParameter& e) {
                throw UsageError(e.what());
            }

            SectorPlan plan;
            std::optional<AllocatorConfig> checks;
            if (kind == PlanKind::adaptive) {
                const SectorTable table(static_cast<int>(sc.size()), cfg.mac, slot_durations(cfg.timing),
                                        cfg.method, cfg.idle);
                plan = allocate_adaptive(sc, cfg.allocator, [&](int k) { return table.utilization(k); });
                checks = cfg.allocator;
            } else {
                plan = allocate_fixed(sc, cfg.fixed_width);
            }
            Output out(al_c.out);
            out.stream() << plan_to_json(plan);

            const auto problems = plan_violations(plan, sc, checks);
            for (const auto& p : problems)
                std::cerr << "plan: " << p << '\n';
            return problems.empty() ? kExitOk : kExitFailed;
        };
    });

    // ---- simulate ---------------------------------------------------------
    Common sim_c;
    int sim_n = 0;
    std::string sim_plan;
    std::uint64_t sim_slots = 0, sim_successes = 0, sim_requests = 0, sim_seed = 1;
    std::string sim_clock;
    auto* sim = app.add_subcommand("simulate", "Slot-level Monte Carlo of one sector or a whole plan");
    add_common(sim, sim_c);
    auto* n_opt = sim->add_option("--n", sim_n, "Stations in a single sector")->check(CLI::PositiveNumber);
    sim->add_option("--plan", sim_plan, "Plan JSON; simulates every sector")
        ->check(CLI::ExistingFile)
        ->excludes(n_opt);
    auto* slots_opt = sim->add_option("--slots", sim_slots, "Stop after this many slots");
    auto* succ_opt =
        sim->add_option("--successes", sim_successes, "Stop after this many successes")->excludes(slots_opt);
    sim->add_option("--requests", sim_requests, "Stop once every station delivered this many frames")
        ->excludes(slots_opt)
        ->excludes(succ_opt);
    sim->add_option("--seed", sim_seed, "Master seed");
    sim->add_option("--clock", sim_clock, "virtual-slot | idle-only");
    sim->callback([&] {
        action = [&] {
            const ExperimentConfig cfg = load(sim_c);
            const SlotDurations slots = slot_durations(cfg.timing);
            SimOptions opts;
            opts.clock = cfg.sim.clock;
            try {
                if (!sim_clock.empty())
                    opts.clock = parse_backoff_clock(sim_clock);
            } catch (const InvalidParameter& e) {
                throw UsageError(e.what());
            }
            StopRule stop = SlotBudget{sim_slots ? sim_slots : cfg.sim.slots};
            if (sim_successes)
                stop = SuccessTarget{sim_successes};
            if (sim_requests)
                stop = MemberRequests{sim_requests};

            std::vector<SimStats> stats;
            std::vector<std::size_t> sizes;
            if (!sim_plan.empty()) {
                const SectorPlan plan = load_plan(sim_plan);
                stats = simulate_plan(plan, cfg.mac, slots, stop, sim_seed, opts);
                for (const auto& s : plan.sectors)
                    sizes.push_back(s.members.size());
            } else {
                if (sim_n < 1)
                    throw UsageError("simulate needs --n or --plan");
                stats.push_back(simulate_sector(sim_n, cfg.mac, slots, stop, sim_seed, opts));
                sizes.push_back(static_cast<std::size_t>(sim_n));
            }

            Output out(sim_c.out);
            auto& os = out.stream();
            os << "sector,n,idle_slots,success_slots,collision_slots,attempts,colliding_attempts,drops,"
                  "elapsed_us,empirical_p,empirical_tau,utilization,budget_exhausted\n";
            bool exhausted = false;
            for (std::size_t i = 0; i < stats.size(); ++i) {
                const auto& s = stats[i];
                exhausted = exhausted || s.budget_exhausted;
                os << i << ',' << sizes[i] << ',' << s.idle_slots << ',' << s.success_slots << ','
                   << s.collision_slots << ',' << s.attempts << ',' << s.colliding_attempts << ',' << s.drops
                   << ',' << format_number(s.elapsed * 1e6) << ',' << format_number(s.empirical_p) << ','
                   << format_number(s.empirical_tau) << ',' << format_number(s.utilization) << ','
                   << (s.budget_exhausted ? 1 : 0) << '\n';
            }
            if (exhausted)
                std::cerr << "warning: slot budget exhausted before the success target\n";
            return exhausted ? kExitFailed : kExitOk;
        };
    });

    // ---- gen-scenario -----------------------------------------------------
    Common gen_c;
    int gen_n = -1;
    std::uint64_t gen_seed = 1;
    double gen_radius = 0.0, gen_mean = -1.0, gen_std = -1.0;
    auto* gen = app.add_subcommand("gen-scenario", "Random station placement around the AP");
    add_common(gen, gen_c);
    gen->add_option("--n", gen_n, "Number of stations")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_seed, "Scenario seed");
    gen->add_option("--radius", gen_radius, "Coverage radius (m)")->check(CLI::PositiveNumber);
    gen->add_option("--angle-mean", gen_mean, "Mean angle (deg)");
    gen->add_option("--angle-std", gen_std, "Angle standard deviation (deg)")->check(CLI::NonNegativeNumber);
    gen->callback([&] {
        action = [&] {
            const ExperimentConfig cfg = load(gen_c);
            GeometryConfig g = cfg.geometry;
            g.seed = gen_seed;
            if (gen_n >= 0)
                g.n = gen_n;
            if (gen_radius > 0.0)
                g.radius = gen_radius;
            if (gen_mean >= 0.0)
                g.angle_mean = deg_to_rad(gen_mean);
            if (gen_std >= 0.0)
                g.angle_std = deg_to_rad(gen_std);
            try {
                g.validate();
            } catch (const InvalidParameter& e) {
                throw UsageError(e.what());
            }
            Output out(gen_c.out);
            out.stream() << scenario_to_json(generate_scenario(g));
            return kExitOk;
        };
    });

    // ---- validate ---------------------------------------------------------
    Common val_c;
    std::vector<int> val_ns;
    std::uint64_t val_slots = 0;
    int val_seeds = 0;
    std::string val_clock;
    bool val_serial = false;
    auto* val = app.add_subcommand("validate", "Cross-check closed form, backoff chain and simulator");
    add_common(val, val_c);
    val->add_option("--n", val_ns, "Station counts")->check(CLI::PositiveNumber);
    val->add_option("--slots", val_slots, "Slots per simulation run")->check(CLI::PositiveNumber);
    val->add_option("--seeds", val_seeds, "Simulation runs per n")->check(CLI::PositiveNumber);
    val->add_option("--clock", val_clock, "virtual-slot | idle-only");
    val->add_flag("--serial", val_serial, "Disable OpenMP");
    val->callback([&] {
        action = [&] {
            ExperimentConfig cfg = load(val_c);
            if (!val_ns.empty())
                cfg.sim.n_values = val_ns;
            if (val_slots)
                cfg.sim.slots = val_slots;
            if (val_seeds)
                cfg.sim.seeds = val_seeds;
            try {
                if (!val_clock.empty())
                    cfg.sim.clock = parse_backoff_clock(val_clock);
                cfg.validate();
            } catch (const InvalidParameter& e) {
                throw UsageError(e.what());
            }
            const auto rep = validate_models(cfg, val_serial ? Execution::serial : Execution::parallel);
            Output out(val_c.out);
            write_validation_csv(out.stream(), rep.rows);
            for (const auto& note : rep.notes)
                std::cerr << "note: " << note << '\n';
            if (rep.partial)
                std::cerr << "note: partial report\n";
            return rep.pass() ? kExitOk : kExitFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const SolverFailure& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}
