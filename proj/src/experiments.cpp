// SPDX-License-Identifier: Apache-2.0

#include "cbap/experiments.hpp"
#include "cbap/markov_chain.hpp"
#include "cbap/rng.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cbap {

using detail::json;

void ExperimentConfig::validate() const
{
    mac.validate();
    timing.validate();
    env.validate();
    geometry.validate();
    allocator.validate();
    if (!(rx_beamwidth > 0.0 && rx_beamwidth <= kTwoPi))
        throw InvalidParameter("config: rx beamwidth must lie in (0, 360] deg");
    if (n_values.empty() || std::any_of(n_values.begin(), n_values.end(), [](int n) { return n < 0; }))
        throw InvalidParameter("config: n_values must be a non-empty list of counts");
    if (sim.seeds < 1 || sim.slots < 1)
        throw InvalidParameter("config: sim needs at least one seed and one slot");
    if (std::any_of(sim.n_values.begin(), sim.n_values.end(), [](int n) { return n < 1; }))
        throw InvalidParameter("config: sim.n_values must be >= 1");
    const double q = kTwoPi / fixed_width;
    if (!(fixed_width > 0.0) || std::abs(q - std::round(q)) > 1e-9)
        throw InvalidParameter("config: fixed width must divide 360 deg");
}

ExperimentConfig table1_config()
{
    ExperimentConfig cfg;
    cfg.seeds.resize(200);
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
        cfg.seeds[i] = i + 1;
    return cfg;
}

namespace {

// Reads optional-or-required members depending on the config's "defaults".
class Reader {
public:
    explicit Reader(bool strict) : strict_(strict) {}

    const json* section(const json& obj, const std::string& key, const std::string& path) const
    {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (strict_)
                throw ParseError(path + "." + key + ": missing");
            return nullptr;
        }
        if (!it->is_object())
            throw ParseError(path + "." + key + ": expected an object");
        return &*it;
    }

    const json* member(const json& obj, const std::string& key, const std::string& path) const
    {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (strict_)
                throw ParseError(path + "." + key + ": missing");
            return nullptr;
        }
        return &*it;
    }

    void number(const json& obj, const std::string& key, const std::string& path, double& out,
                double scale = 1.0) const
    {
        if (const json* v = member(obj, key, path))
            out = detail::number_at(*v, path + "." + key) * scale;
    }

    template <typename Int>
    void integer(const json& obj, const std::string& key, const std::string& path, Int& out) const
    {
        if (const json* v = member(obj, key, path)) {
            const long long x = detail::integer_at(*v, path + "." + key);
            if (x < static_cast<long long>(std::numeric_limits<Int>::min()) ||
                (x > 0 && static_cast<unsigned long long>(x) > static_cast<unsigned long long>(std::numeric_limits<Int>::max())))
                throw ParseError(path + "." + key + ": out of range");
            out = static_cast<Int>(x);
        }
    }

    void string(const json& obj, const std::string& key, const std::string& path, std::string& out) const
    {
        if (const json* v = member(obj, key, path)) {
            if (!v->is_string())
                throw ParseError(path + "." + key + ": expected a string");
            out = v->get<std::string>();
        }
    }

private:
    bool strict_;
};

std::vector<int> int_list(const json& v, const std::string& path)
{
    if (!v.is_array())
        throw ParseError(path + ": expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(static_cast<int>(detail::integer_at(v[i], path + "[" + std::to_string(i) + "]")));
    return out;
}

} // namespace

ExperimentConfig config_from_json(std::string_view text)
{
    const json j = detail::parse_json(text);
    if (!j.is_object())
        throw ParseError("config: expected an object");

    std::string defaults = "table1";
    if (const auto it = j.find("defaults"); it != j.end()) {
        if (!it->is_string())
            throw ParseError("config.defaults: expected a string");
        defaults = it->get<std::string>();
    }
    if (defaults != "table1" && defaults != "none")
        throw ParseError("config.defaults: expected \"table1\" or \"none\"");

    const Reader r(defaults == "none");
    ExperimentConfig cfg = table1_config();
    constexpr double us = 1e-6;
    constexpr double deg = kPi / 180.0;

    try {
        std::string s;
        s = std::string(to_string(cfg.method));
        r.string(j, "method", "config", s);
        cfg.method = parse_solver_method(s);
        s = std::string(to_string(cfg.idle));
        r.string(j, "idle_accounting", "config", s);
        cfg.idle = parse_idle_accounting(s);
    } catch (const InvalidParameter& e) {
        throw ParseError(std::string("config: ") + e.what());
    }

    if (const json* mac = r.section(j, "mac", "config")) {
        r.integer(*mac, "w0", "config.mac", cfg.mac.w0);
        r.integer(*mac, "m", "config.mac", cfg.mac.m);
        r.integer(*mac, "h", "config.mac", cfg.mac.h);
    }

    if (const json* t = r.section(j, "timing", "config")) {
        const std::string p = "config.timing";
        r.number(*t, "sifs_us", p, cfg.timing.sifs, us);
        r.number(*t, "difs_us", p, cfg.timing.difs, us);
        r.number(*t, "cca_detect_us", p, cfg.timing.cca_detect, us);
        r.number(*t, "rifs_us", p, cfg.timing.rifs, us);
        r.integer(*t, "rts_bytes", p, cfg.timing.rts_bytes);
        r.integer(*t, "cts_bytes", p, cfg.timing.cts_bytes);
        r.integer(*t, "ack_bytes", p, cfg.timing.ack_bytes);
        r.integer(*t, "data_bytes", p, cfg.timing.data_bytes);
        r.number(*t, "control_rate_bps", p, cfg.timing.control_rate);
        r.number(*t, "data_rate_bps", p, cfg.timing.data_rate);
        // null (or absent) timeout means one CTS airtime
        if (const auto it = t->find("timeout_us"); it != t->end() && !it->is_null())
            cfg.timing.timeout = detail::number_at(*it, p + ".timeout_us") * us;
    }

    if (const json* phy = r.section(j, "phy", "config")) {
        const std::string p = "config.phy";
        r.number(*phy, "tx_power_dbm", p, cfg.env.tx_power_dbm);
        r.number(*phy, "frequency_hz", p, cfg.env.frequency_hz);
        r.number(*phy, "path_loss_exp", p, cfg.env.path_loss_exp);
        r.number(*phy, "fading_db", p, cfg.env.fading_db);
        r.number(*phy, "link_margin_db", p, cfg.env.link_margin_db);
        r.number(*phy, "rx_beamwidth_deg", p, cfg.rx_beamwidth, deg);
        if (const json* sens = r.member(*phy, "sensitivities_dbm", p)) {
            if (!sens->is_object())
                throw ParseError(p + ".sensitivities_dbm: expected an object");
            cfg.env.sensitivities_dbm.clear();
            for (auto it = sens->begin(); it != sens->end(); ++it)
                cfg.env.sensitivities_dbm[it.key()] = detail::number_at(it.value(), p + ".sensitivities_dbm." + it.key());
        }
    }

    if (const json* g = r.section(j, "geometry", "config")) {
        const std::string p = "config.geometry";
        r.number(*g, "radius_m", p, cfg.geometry.radius);
        r.number(*g, "dist_min_m", p, cfg.geometry.dist_min);
        r.number(*g, "angle_mean_deg", p, cfg.geometry.angle_mean, deg);
        r.number(*g, "angle_std_deg", p, cfg.geometry.angle_std, deg);
    }

    if (const json* a = r.section(j, "allocator", "config")) {
        const std::string p = "config.allocator";
        r.number(*a, "omega_min_deg", p, cfg.allocator.omega_min, deg);
        r.number(*a, "delta_omega_deg", p, cfg.allocator.delta_omega, deg);
        r.number(*a, "omega_max_deg", p, cfg.allocator.omega_max, deg);
    }

    r.number(j, "fixed_width_deg", "config", cfg.fixed_width, deg);
    if (const json* v = r.member(j, "n_values", "config"))
        cfg.n_values = int_list(*v, "config.n_values");
    r.integer(j, "master_seed", "config", cfg.master_seed);

    if (const json* v = r.member(j, "seeds", "config")) {
        cfg.seeds.clear();
        if (v->is_number_integer()) {
            const long long count = v->get<long long>();
            if (count < 1)
                throw ParseError("config.seeds: count must be >= 1");
            for (long long i = 1; i <= count; ++i)
                cfg.seeds.push_back(static_cast<std::uint64_t>(i));
        } else if (v->is_array()) {
            for (std::size_t i = 0; i < v->size(); ++i)
                cfg.seeds.push_back(static_cast<std::uint64_t>(
                    detail::integer_at((*v)[i], "config.seeds[" + std::to_string(i) + "]")));
        } else {
            throw ParseError("config.seeds: expected a count or an array of seeds");
        }
    }

    if (const json* sim = r.section(j, "sim", "config")) {
        const std::string p = "config.sim";
        r.integer(*sim, "slots", p, cfg.sim.slots);
        r.integer(*sim, "seeds", p, cfg.sim.seeds);
        r.number(*sim, "z_max", p, cfg.sim.z_max);
        r.number(*sim, "rel_tol", p, cfg.sim.rel_tol);
        r.number(*sim, "utilization_tol", p, cfg.sim.utilization_tol);
        std::string clock(to_string(cfg.sim.clock));
        r.string(*sim, "clock", p, clock);
        try {
            cfg.sim.clock = parse_backoff_clock(clock);
        } catch (const InvalidParameter& e) {
            throw ParseError(p + ".clock: " + e.what());
        }
        if (const json* v = r.member(*sim, "n_values", p))
            cfg.sim.n_values = int_list(*v, p + ".n_values");
    }

    try {
        cfg.validate();
    } catch (const InvalidParameter& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    return config_from_json(detail::read_text_file(path));
}

std::string config_to_json(const ExperimentConfig& cfg)
{
    constexpr double us = 1e6;
    json j;
    j["defaults"] = "none";
    j["method"] = std::string(to_string(cfg.method));
    j["idle_accounting"] = std::string(to_string(cfg.idle));
    j["mac"] = {{"w0", cfg.mac.w0}, {"m", cfg.mac.m}, {"h", cfg.mac.h}};
    j["timing"] = {{"sifs_us", cfg.timing.sifs * us},
                   {"difs_us", cfg.timing.difs * us},
                   {"cca_detect_us", cfg.timing.cca_detect * us},
                   {"rifs_us", cfg.timing.rifs * us},
                   {"rts_bytes", cfg.timing.rts_bytes},
                   {"cts_bytes", cfg.timing.cts_bytes},
                   {"ack_bytes", cfg.timing.ack_bytes},
                   {"data_bytes", cfg.timing.data_bytes},
                   {"control_rate_bps", cfg.timing.control_rate},
                   {"data_rate_bps", cfg.timing.data_rate},
                   {"timeout_us", cfg.timing.timeout ? json(*cfg.timing.timeout * us) : json(nullptr)}};
    j["phy"] = {{"tx_power_dbm", cfg.env.tx_power_dbm},
                {"frequency_hz", cfg.env.frequency_hz},
                {"path_loss_exp", cfg.env.path_loss_exp},
                {"fading_db", cfg.env.fading_db},
                {"link_margin_db", cfg.env.link_margin_db},
                {"rx_beamwidth_deg", rad_to_deg(cfg.rx_beamwidth)},
                {"sensitivities_dbm", cfg.env.sensitivities_dbm}};
    j["geometry"] = {{"radius_m", cfg.geometry.radius},
                     {"dist_min_m", cfg.geometry.dist_min},
                     {"angle_mean_deg", rad_to_deg(cfg.geometry.angle_mean)},
                     {"angle_std_deg", rad_to_deg(cfg.geometry.angle_std)}};
    j["allocator"] = {{"omega_min_deg", rad_to_deg(cfg.allocator.omega_min)},
                      {"delta_omega_deg", rad_to_deg(cfg.allocator.delta_omega)},
                      {"omega_max_deg", rad_to_deg(cfg.allocator.omega_max)}};
    j["fixed_width_deg"] = rad_to_deg(cfg.fixed_width);
    j["n_values"] = cfg.n_values;
    j["seeds"] = cfg.seeds;
    j["master_seed"] = cfg.master_seed;
    j["sim"] = {{"slots", cfg.sim.slots},
                {"seeds", cfg.sim.seeds},
                {"clock", std::string(to_string(cfg.sim.clock))},
                {"z_max", cfg.sim.z_max},
                {"rel_tol", cfg.sim.rel_tol},
                {"utilization_tol", cfg.sim.utilization_tol},
                {"n_values", cfg.sim.n_values}};
    return j.dump(2) + "\n";
}

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

MeanStd mean_std(std::span<const double> xs)
{
    MeanStd out;
    if (xs.empty())
        return out;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - out.mean) * (x - out.mean);
        out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return out;
}

// ---- utilization sweep --------------------------------------------------

std::vector<SweepRow> run_utilization_sweep(std::span<const int> n_values, const ExperimentConfig& cfg)
{
    const SlotDurations slots = slot_durations(cfg.timing);
    std::vector<SweepRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        SweepRow row;
        row.n = n;
        try {
            row.utilization = sector_utilization(n, cfg.mac, slots, cfg.method);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows)
{
    os << "n,utilization\n";
    for (const auto& r : rows) {
        if (!r.error)
            os << r.n << ',' << format_number(r.utilization) << '\n';
    }
}

// ---- adaptive vs fixed --------------------------------------------------

ComparisonRow compare_one(int n, std::uint64_t seed, const ExperimentConfig& cfg, const SectorTable& table)
{
    ComparisonRow row;
    row.n = n;
    row.seed = seed;

    GeometryConfig g = cfg.geometry;
    g.n = n;
    g.seed = seed;
    const Scenario sc = generate_scenario(g);

    const SectorPlan adaptive =
        allocate_adaptive(sc, cfg.allocator, [&](int k) { return table.utilization(k); });
    const SectorPlan fixed = allocate_fixed(sc, cfg.fixed_width);
    if (!adaptive.uncovered.empty())
        throw SolverFailure("adaptive plan left " + std::to_string(adaptive.uncovered.size()) +
                                " stations uncovered",
                            0.0);

    auto score = [&](const SectorPlan& plan, double& u, double& t) {
        std::vector<double> per;
        per.reserve(plan.q());
        t = 0.0;
        // Empty sectors receive no CBAP share, so they do not enter the mean.
        for (const auto& s : plan.sectors) {
            const int k = static_cast<int>(s.members.size());
            if (k == 0)
                continue;
            per.push_back(table.utilization(k));
            t += table.cbap(k).t_cbap;
        }
        u = per.empty() ? 0.0 : network_utilization(per);
    };
    score(adaptive, row.u_adaptive, row.t_adaptive);
    score(fixed, row.u_fixed, row.t_fixed);
    row.q_adaptive = adaptive.q();
    row.q_fixed = fixed.q();
    return row;
}

ComparisonReport run_comparison(const ExperimentConfig& cfg, Execution exec)
{
    cfg.validate();
    if (cfg.seeds.empty())
        throw InvalidParameter("run_comparison: no seeds");

    std::vector<int> ns = cfg.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<std::uint64_t> seeds = cfg.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    const SlotDurations slots = slot_durations(cfg.timing);
    const SectorTable table(ns.back(), cfg.mac, slots, cfg.method, cfg.idle);

    ComparisonReport rep;
    rep.rows.resize(ns.size() * seeds.size());
    for_each_index(rep.rows.size(), exec, [&](std::size_t i) {
        const int n = ns[i / seeds.size()];
        const std::uint64_t seed = seeds[i % seeds.size()];
        try {
            rep.rows[i] = compare_one(n, seed, cfg, table);
        } catch (const std::exception& e) {
            rep.rows[i] = ComparisonRow{};
            rep.rows[i].n = n;
            rep.rows[i].seed = seed;
            rep.rows[i].error = e.what();
        }
    });

    for (std::size_t a = 0; a < ns.size(); ++a) {
        ComparisonAggregate agg;
        agg.n = ns[a];
        std::vector<double> ua, uf, ta, tf, qa, up, red;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            const auto& r = rep.rows[a * seeds.size() + s];
            if (r.error) {
                ++agg.failures;
                continue;
            }
            ++agg.runs;
            ua.push_back(r.u_adaptive);
            uf.push_back(r.u_fixed);
            ta.push_back(r.t_adaptive);
            tf.push_back(r.t_fixed);
            qa.push_back(static_cast<double>(r.q_adaptive));
            if (r.u_fixed > 0.0)
                up.push_back(r.uplift());
            if (r.t_fixed > 0.0)
                red.push_back(r.reduction());
        }
        agg.u_adaptive = mean_std(ua);
        agg.u_fixed = mean_std(uf);
        agg.t_adaptive = mean_std(ta);
        agg.t_fixed = mean_std(tf);
        agg.q_adaptive = mean_std(qa);
        agg.uplift = mean_std(up);
        agg.reduction = mean_std(red);
        rep.aggregates.push_back(agg);
    }
    return rep;
}

void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows)
{
    os << "n,seed,u_adaptive,u_fixed,t_adaptive_us,t_fixed_us\n";
    for (const auto& r : rows) {
        if (r.error)
            continue;
        os << r.n << ',' << r.seed << ',' << format_number(r.u_adaptive) << ',' << format_number(r.u_fixed)
           << ',' << format_number(r.t_adaptive * 1e6) << ',' << format_number(r.t_fixed * 1e6) << '\n';
    }
}

void write_comparison_summary_csv(std::ostream& os, std::span<const ComparisonAggregate> aggs)
{
    os << "n,runs,failures,u_adaptive_mean,u_adaptive_std,u_fixed_mean,u_fixed_std,"
          "t_adaptive_mean_us,t_adaptive_std_us,t_fixed_mean_us,t_fixed_std_us,"
          "q_adaptive_mean,uplift_mean,reduction_mean\n";
    for (const auto& a : aggs) {
        os << a.n << ',' << a.runs << ',' << a.failures << ',' << format_number(a.u_adaptive.mean) << ','
           << format_number(a.u_adaptive.stddev) << ',' << format_number(a.u_fixed.mean) << ','
           << format_number(a.u_fixed.stddev) << ',' << format_number(a.t_adaptive.mean * 1e6) << ','
           << format_number(a.t_adaptive.stddev * 1e6) << ',' << format_number(a.t_fixed.mean * 1e6) << ','
           << format_number(a.t_fixed.stddev * 1e6) << ',' << format_number(a.q_adaptive.mean) << ','
           << format_number(a.uplift.mean) << ',' << format_number(a.reduction.mean) << '\n';
    }
}

// ---- link budget curves -------------------------------------------------

LinkBudgetTable run_linkbudget_curves(const ExperimentConfig& cfg, std::span<const std::string> mcs,
                                      std::span<const double> distances, std::span<const double> rx_deg)
{
    LinkBudgetTable table;
    for (const auto& name : mcs) {
        if (cfg.env.sensitivities_dbm.count(name) == 0) {
            table.skipped_mcs.push_back(name);
            continue;
        }
        std::vector<double> rx_rad;
        for (double r : rx_deg)
            rx_rad.push_back(deg_to_rad(r));
        for (double d : distances) {
            for (const auto& pt : required_tx_beamwidth_curve(rx_rad, name, d, cfg.env)) {
                LinkBudgetRow row;
                row.mcs = name;
                row.distance = d;
                row.rx_deg = rad_to_deg(pt.rx_beamwidth);
                row.tx_deg = rad_to_deg(pt.tx.beamwidth);
                row.status = pt.tx.status;
                table.rows.push_back(row);
            }
        }
    }
    return table;
}

void write_linkbudget_csv(std::ostream& os, std::span<const LinkBudgetRow> rows)
{
    os << "mcs,d_m,rx_bw_deg,tx_bw_deg,status\n";
    for (const auto& r : rows) {
        const char* status = r.status == BeamwidthLimit::Status::ok             ? "ok"
                             : r.status == BeamwidthLimit::Status::omni_clamped ? "omni-clamped"
                                                                                 : "infeasible";
        os << r.mcs << ',' << format_number(r.distance) << ',' << format_number(r.rx_deg) << ','
           << format_number(r.tx_deg) << ',' << status << '\n';
    }
}

// ---- three-way validation -----------------------------------------------

bool ValidationReport::pass() const
{
    return !partial && std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.pass; });
}

namespace {

bool within(double sim, double ref, double se, const SimSettings& s)
{
    const double delta = std::abs(sim - ref);
    if (s.rel_tol > 0.0 && delta <= s.rel_tol * std::abs(ref))
        return true;
    if (se == 0.0)
        return delta <= 1e-12;
    return delta <= s.z_max * se;
}

} // namespace

ValidationReport validate_models(const ExperimentConfig& cfg, Execution exec)
{
    cfg.validate();
    const SlotDurations slots = slot_durations(cfg.timing);
    const auto& ns = cfg.sim.n_values;
    const auto seeds = static_cast<std::size_t>(cfg.sim.seeds);

    std::vector<SimJob> jobs;
    jobs.reserve(ns.size() * seeds);
    for (int n : ns) {
        for (std::size_t s = 0; s < seeds; ++s) {
            const std::uint64_t stream = (static_cast<std::uint64_t>(n) << 32) | s;
            jobs.push_back({n, derive_seed(cfg.master_seed, stream), SlotBudget{cfg.sim.slots}});
        }
    }
    SimOptions opts;
    opts.clock = cfg.sim.clock;
    const auto stats = simulate_batch(jobs, cfg.mac, slots, opts, exec);

    ValidationReport rep;
    for (std::size_t a = 0; a < ns.size(); ++a) {
        const int n = ns[a];
        ValidationRow row;
        row.n = n;

        try {
            const auto cf = solve_fixed_point(n, cfg.mac);
            row.closed_form = {cf.p, cf.tau, utilization_for_tau(n, cf.tau, slots)};
        } catch (const SolverFailure& e) {
            rep.notes.push_back("n=" + std::to_string(n) + ": closed form failed: " + e.what());
        }
        const auto ch = solve_markov_numeric(n, cfg.mac);
        row.chain = {ch.p, ch.tau, utilization_for_tau(n, ch.tau, slots)};

        std::vector<double> ps, taus, us;
        for (std::size_t s = 0; s < seeds; ++s) {
            const auto& st = stats[a * seeds + s];
            ps.push_back(st.empirical_p);
            taus.push_back(st.empirical_tau);
            us.push_back(st.utilization);
        }
        const MeanStd mp = mean_std(ps);
        const MeanStd mt = mean_std(taus);
        const MeanStd mu = mean_std(us);
        const double root = std::sqrt(static_cast<double>(seeds));
        row.sim = {mp.mean, mt.mean, mu.mean};
        row.p_se = mp.stddev / root;
        row.tau_se = mt.stddev / root;
        row.z_p = row.p_se > 0.0 ? (row.sim.p - row.chain.p) / row.p_se : 0.0;
        row.z_tau = row.tau_se > 0.0 ? (row.sim.tau - row.chain.tau) / row.tau_se : 0.0;
        row.u_rel_err = mu.mean > 0.0 ? std::abs(row.chain.utilization - mu.mean) / mu.mean : 0.0;
        row.pass = within(row.sim.p, row.chain.p, row.p_se, cfg.sim) &&
                   within(row.sim.tau, row.chain.tau, row.tau_se, cfg.sim) &&
                   row.u_rel_err <= cfg.sim.utilization_tol;
        rep.rows.push_back(row);
    }

    // The closed-form b00 does not reduce to the textbook 2/(W0+1) at p = 0.
    const double closed0 = tau_of_p(0.0, cfg.mac).tau;
    const double chain0 = tau_of_p_numeric(0.0, cfg.mac);
    std::ostringstream note;
    note << "p->0 limit: closed-form tau = " << format_number(closed0) << ", backoff chain tau = 2/(W0+1) = "
         << format_number(chain0) << "; closed-form columns are informational";
    rep.notes.push_back(note.str());
    return rep;
}

void write_validation_csv(std::ostream& os, std::span<const ValidationRow> rows)
{
    os << "n,p_closed,tau_closed,u_closed,p_chain,tau_chain,u_chain,p_sim,p_sim_se,tau_sim,tau_sim_se,"
          "u_sim,z_p,z_tau,u_rel_err,pass\n";
    for (const auto& r : rows) {
        os << r.n;
        for (double v : {r.closed_form.p, r.closed_form.tau, r.closed_form.utilization, r.chain.p, r.chain.tau,
                         r.chain.utilization, r.sim.p, r.p_se, r.sim.tau, r.tau_se, r.sim.utilization, r.z_p,
                         r.z_tau, r.u_rel_err})
            os << ',' << format_number(v);
        os << ',' << (r.pass ? 1 : 0) << '\n';
    }
}

} // namespace cbap
