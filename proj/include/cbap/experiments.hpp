// SPDX-License-Identifier: Apache-2.0
//
// Experiment drivers behind the command-line tool: utilization sweeps, the
// adaptive-vs-fixed comparison, link-budget curves and the three-way model
// cross-check. All drivers are deterministic for a given config.

#pragma once

#include "cbap/batch.hpp"
#include "cbap/beam_allocator.hpp"
#include "cbap/cbap_timing.hpp"
#include "cbap/contention.hpp"
#include "cbap/link_budget.hpp"
#include "cbap/scenario.hpp"
#include "cbap/sector_table.hpp"
#include "cbap/slot_sim.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbap {

struct SimSettings {
    std::uint64_t slots = 1'000'000; ///< per seed
    int seeds = 20;
    BackoffClock clock = BackoffClock::virtual_slot;
    double z_max = 3.0;          ///< allowed |delta| in standard errors
    double rel_tol = 0.0;        ///< alternatively allowed relative delta
    double utilization_tol = 0.05; ///< relative, analytic vs simulated U
    std::vector<int> n_values{1, 2, 5, 10, 20, 50};
};

struct ExperimentConfig {
    MacParams mac;
    TimingParams timing;
    PhyEnv env;
    double rx_beamwidth = deg_to_rad(60.0);
    GeometryConfig geometry;
    AllocatorConfig allocator;
    double fixed_width = deg_to_rad(90.0);
    std::vector<std::uint64_t> seeds; ///< scenario seeds for `compare`
    std::vector<int> n_values{10, 20, 30, 40, 50};
    std::uint64_t master_seed = 1;
    SolverMethod method = SolverMethod::numeric_chain;
    IdleAccounting idle = IdleAccounting::per_request;
    SimSettings sim;

    void validate() const;
};

/// Default parameter set ("table1") with 200 comparison seeds.
ExperimentConfig table1_config();

/// Parses the JSON config format (see configs/table1.json). With
/// "defaults": "table1" every field is optional and falls back to the defaults;
/// with "defaults": "none" every field must be present.
ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// Nine significant digits, as used in every CSV output.
std::string format_number(double x);

// ---- utilization sweep --------------------------------------------------

struct SweepRow {
    int n = 0;
    double utilization = 0.0;
    std::optional<std::string> error;
};

std::vector<SweepRow> run_utilization_sweep(std::span<const int> n_values, const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

// ---- adaptive vs fixed --------------------------------------------------

struct ComparisonRow {
    int n = 0;
    std::uint64_t seed = 0;
    double u_adaptive = 0.0;
    double u_fixed = 0.0;
    double t_adaptive = 0.0; ///< seconds, summed over sectors
    double t_fixed = 0.0;
    std::size_t q_adaptive = 0;
    std::size_t q_fixed = 0;
    std::optional<std::string> error;

    double uplift() const { return u_adaptive / u_fixed - 1.0; }
    double reduction() const { return 1.0 - t_adaptive / t_fixed; }
    bool operator==(const ComparisonRow&) const = default;
};

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;
};

struct ComparisonAggregate {
    int n = 0;
    std::size_t runs = 0;
    std::size_t failures = 0;
    MeanStd u_adaptive, u_fixed, t_adaptive, t_fixed, q_adaptive;
    MeanStd uplift;    ///< per-seed relative utilization gain
    MeanStd reduction; ///< per-seed relative CBAP-time reduction
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows; ///< sorted by (n, seed)
    std::vector<ComparisonAggregate> aggregates;
};

/// One (n, seed) evaluation: generate, allocate both plans, score them.
ComparisonRow compare_one(int n, std::uint64_t seed, const ExperimentConfig& cfg,
                          const SectorTable& table);

ComparisonReport run_comparison(const ExperimentConfig& cfg, Execution exec = Execution::parallel);
void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows);
void write_comparison_summary_csv(std::ostream& os, std::span<const ComparisonAggregate> aggs);

// ---- link budget curves -------------------------------------------------

struct LinkBudgetRow {
    std::string mcs;
    double distance = 0.0;
    double rx_deg = 0.0;
    double tx_deg = 0.0;
    BeamwidthLimit::Status status = BeamwidthLimit::Status::ok;
};

struct LinkBudgetTable {
    std::vector<LinkBudgetRow> rows;
    std::vector<std::string> skipped_mcs;
};

LinkBudgetTable run_linkbudget_curves(const ExperimentConfig& cfg, std::span<const std::string> mcs,
                                      std::span<const double> distances, std::span<const double> rx_deg);
void write_linkbudget_csv(std::ostream& os, std::span<const LinkBudgetRow> rows);

// ---- three-way validation -----------------------------------------------

struct ModelPoint {
    double p = 0.0;
    double tau = 0.0;
    double utilization = 0.0;
};

struct ValidationRow {
    int n = 0;
    ModelPoint closed_form;
    ModelPoint chain;
    ModelPoint sim; ///< mean over seeds
    double p_se = 0.0;   ///< standard error of the seed mean
    double tau_se = 0.0;
    double z_p = 0.0;
    double z_tau = 0.0;
    double u_rel_err = 0.0; ///< |U_chain - U_sim| / U_sim
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    std::vector<std::string> notes;
    bool partial = false;
    bool pass() const;
};

ValidationReport validate_models(const ExperimentConfig& cfg, Execution exec = Execution::parallel);
void write_validation_csv(std::ostream& os, std::span<const ValidationRow> rows);

MeanStd mean_std(std::span<const double> xs);

} // namespace cbap
