// SPDX-License-Identifier: Apache-2.0

#include "cbap/beam_allocator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cbap {

namespace {

constexpr double kWrapSnap = 1e-12;
constexpr double kWidthSlack = 1e-9;

bool in_arc(double angle, double start, double width)
{
    if (width >= kTwoPi)
        return true;
    return arc_offset(angle, start) < width;
}

} // namespace

void AllocatorConfig::validate() const
{
    if (!(omega_min > 0.0 && omega_min <= omega_max && omega_max <= kTwoPi + kWidthSlack))
        throw InvalidParameter("AllocatorConfig: require 0 < omega_min <= omega_max <= 2pi");
    if (!(delta_omega > 0.0))
        throw InvalidParameter("AllocatorConfig: delta_omega must be > 0");
}

std::string_view to_string(PlanKind k)
{
    return k == PlanKind::adaptive ? "adaptive" : "fixed";
}

PlanKind parse_plan_kind(std::string_view s)
{
    if (s == "adaptive")
        return PlanKind::adaptive;
    if (s == "fixed")
        return PlanKind::fixed;
    throw InvalidParameter("unknown plan kind '" + std::string(s) + "'");
}

double arc_offset(double angle, double start)
{
    const double d = normalize_angle(angle - start);
    return d > kTwoPi - kWrapSnap ? 0.0 : d;
}

std::vector<int> stas_in_arc(const Scenario& scenario, double start, double width)
{
    if (width < 0.0)
        throw InvalidParameter("stas_in_arc: width must be >= 0");
    std::vector<int> ids;
    for (const auto& s : scenario.stations) {
        if (width > 0.0 && in_arc(s.angle, start, width))
            ids.push_back(s.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

SectorPlan allocate_adaptive(const Scenario& scenario, const AllocatorConfig& cfg,
                             const UtilizationFn& utilization)
{
    cfg.validate();
    SectorPlan plan;
    plan.kind = PlanKind::adaptive;
    const auto& sta = scenario.stations;
    if (sta.empty())
        return plan;

    std::vector<bool> covered(sta.size(), false);
    std::size_t remaining = sta.size();

    auto uncovered_in = [&](double start, double width) {
        std::vector<std::size_t> hit;
        for (std::size_t j = 0; j < sta.size(); ++j) {
            if (!covered[j] && in_arc(sta[j].angle, start, width))
                hit.push_back(j);
        }
        return hit;
    };
    auto count_in = [&](double start, double width) {
        return static_cast<int>(uncovered_in(start, width).size());
    };

    const auto first = std::min_element(sta.begin(), sta.end(),
                                        [](const Station& a, const Station& b) { return a.angle < b.angle; });
    const double origin = first->angle;
    double anchor = origin;
    double traversed = 0.0; // counter-clockwise distance of `anchor` from `origin`

    // Room left before the sweep returns to `origin`. Near the end of the turn
    // it is measured directly so the last sector ends exactly at the origin.
    auto room = [&]() {
        const double left = kTwoPi - traversed;
        if (left > cfg.omega_max + cfg.delta_omega)
            return left;
        return arc_offset(origin, anchor);
    };

    while (remaining > 0 && traversed < kTwoPi - kWrapSnap) {
        double cap = room();
        if (cap <= 0.0)
            break;

        if (uncovered_in(anchor, std::min(cfg.omega_min, cap)).empty()) {
            double best = kTwoPi;
            std::size_t next = 0;
            for (std::size_t j = 0; j < sta.size(); ++j) {
                if (covered[j])
                    continue;
                const double off = arc_offset(sta[j].angle, anchor);
                if (off < best) {
                    best = off;
                    next = j;
                }
            }
            if (traversed + best >= kTwoPi)
                break;
            traversed += best;
            anchor = sta[next].angle;
            cap = room();
            if (cap <= 0.0)
                break;
        }

        double w_prev = std::min(cfg.omega_min, cap);
        double u_prev = utilization(count_in(anchor, w_prev));
        while (w_prev < cap) {
            const double w_next = w_prev + cfg.delta_omega;
            if (w_next > cfg.omega_max + kWidthSlack)
                break;
            const double w_try = std::min(w_next, cap);
            const double u_next = utilization(count_in(anchor, w_try));
            if (!(u_next >= u_prev))
                break;
            w_prev = w_try;
            u_prev = u_next;
        }

        SectorSpec sector;
        sector.start = anchor;
        sector.width = w_prev;
        for (std::size_t j : uncovered_in(anchor, w_prev)) {
            covered[j] = true;
            --remaining;
            sector.members.push_back(sta[j].id);
        }
        std::sort(sector.members.begin(), sector.members.end());
        plan.sectors.push_back(std::move(sector));

        traversed += w_prev;
        anchor = normalize_angle(anchor + w_prev);
    }

    for (std::size_t j = 0; j < sta.size(); ++j) {
        if (!covered[j])
            plan.uncovered.push_back(sta[j].id);
    }
    std::sort(plan.uncovered.begin(), plan.uncovered.end());
    return plan;
}

SectorPlan allocate_adaptive(const Scenario& scenario, const AllocatorConfig& cfg,
                             const MacParams& mac, const SlotDurations& slots, SolverMethod method)
{
    std::map<int, double> memo;
    return allocate_adaptive(scenario, cfg, [&](int n) {
        auto it = memo.find(n);
        if (it == memo.end())
            it = memo.emplace(n, sector_utilization(n, mac, slots, method)).first;
        return it->second;
    });
}

SectorPlan allocate_fixed(const Scenario& scenario, double width)
{
    if (!(width > 0.0))
        throw InvalidParameter("allocate_fixed: width must be > 0");
    const double ratio = kTwoPi / width;
    const double q = std::round(ratio);
    if (q < 1.0 || std::abs(ratio - q) > 1e-9)
        throw InvalidParameter("allocate_fixed: 2pi/width must be a positive integer");

    const auto count = static_cast<std::size_t>(q);
    SectorPlan plan;
    plan.kind = PlanKind::fixed;
    plan.sectors.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        plan.sectors[k].start = static_cast<double>(k) * width;
        plan.sectors[k].width = width;
    }
    for (const auto& s : scenario.stations) {
        const auto k = std::min(count - 1, static_cast<std::size_t>(s.angle / width));
        plan.sectors[k].members.push_back(s.id);
    }
    for (auto& sec : plan.sectors)
        std::sort(sec.members.begin(), sec.members.end());
    return plan;
}

double omega_max_from_link_budget(double radius, double rx_beamwidth, const std::string& mcs,
                                  const PhyEnv& env)
{
    const BeamwidthLimit lim = max_tx_beamwidth(std::max(radius, 1.0), rx_beamwidth, mcs, env);
    return lim.beamwidth;
}

std::vector<std::string> plan_violations(const SectorPlan& plan, const Scenario& scenario,
                                         const std::optional<AllocatorConfig>& cfg)
{
    std::vector<std::string> out;
    auto fail = [&](const std::string& msg) { out.push_back(msg); };

    double total = 0.0;
    std::map<int, int> owner;
    for (std::size_t k = 0; k < plan.sectors.size(); ++k) {
        const auto& s = plan.sectors[k];
        const std::string tag = "sector " + std::to_string(k);
        if (!(s.start >= 0.0 && s.start < kTwoPi))
            fail(tag + ": start outside [0, 2pi)");
        if (!(s.width > 0.0))
            fail(tag + ": non-positive width");
        total += s.width;

        if (!std::is_sorted(s.members.begin(), s.members.end()))
            fail(tag + ": members not in ascending order");
        for (int id : s.members) {
            if (!owner.emplace(id, static_cast<int>(k)).second)
                fail("station " + std::to_string(id) + " in more than one sector");
        }

        for (std::size_t j = k + 1; j < plan.sectors.size(); ++j) {
            const auto& o = plan.sectors[j];
            if (arc_offset(o.start, s.start) < s.width - kWidthSlack ||
                arc_offset(s.start, o.start) < o.width - kWidthSlack)
                fail(tag + " overlaps sector " + std::to_string(j));
        }

        if (plan.kind == PlanKind::fixed && std::abs(s.width - plan.sectors.front().width) > kWidthSlack)
            fail(tag + ": fixed plan with unequal widths");

        if (cfg && plan.kind == PlanKind::adaptive) {
            const bool last = k + 1 == plan.sectors.size();
            if (s.width > cfg->omega_max + kWidthSlack)
                fail(tag + ": width above omega_max");
            if (!last) {
                if (s.width < cfg->omega_min - kWidthSlack)
                    fail(tag + ": width below omega_min");
                const double steps = (s.width - cfg->omega_min) / cfg->delta_omega;
                if (std::abs(steps - std::round(steps)) > 1e-6)
                    fail(tag + ": width not on the omega_min + k*delta grid");
            }
        }
    }
    if (total > kTwoPi + kWidthSlack)
        fail("cumulative width exceeds 2pi");

    // Members must lie inside their arc, and every station inside an arc must
    // be a member, except a station sitting on a shared boundary (within
    // rounding) that the neighbouring sector already owns.
    std::map<int, double> angle_of;
    for (const auto& st : scenario.stations)
        angle_of[st.id] = st.angle;
    for (std::size_t k = 0; k < plan.sectors.size(); ++k) {
        const auto& s = plan.sectors[k];
        const std::string tag = "sector " + std::to_string(k);
        for (int id : s.members) {
            const auto it = angle_of.find(id);
            if (it == angle_of.end()) {
                fail(tag + ": unknown station " + std::to_string(id));
                continue;
            }
            if (!(s.width >= kTwoPi) && arc_offset(it->second, s.start) >= s.width + kWidthSlack)
                fail(tag + ": station " + std::to_string(id) + " lies outside the arc");
        }
        for (int id : stas_in_arc(scenario, s.start, s.width)) {
            if (std::find(s.members.begin(), s.members.end(), id) != s.members.end())
                continue;
            const double off = arc_offset(angle_of.at(id), s.start);
            const bool on_edge = off <= kWidthSlack || s.width - off <= kWidthSlack;
            const auto o = owner.find(id);
            if (!on_edge || o == owner.end())
                fail(tag + ": station " + std::to_string(id) + " inside the arc but not a member");
        }
    }

    for (const auto& st : scenario.stations) {
        const bool in_sector = owner.count(st.id) != 0;
        const bool reported =
            std::find(plan.uncovered.begin(), plan.uncovered.end(), st.id) != plan.uncovered.end();
        if (!in_sector && !reported)
            fail("station " + std::to_string(st.id) + " neither covered nor reported");
        if (in_sector && reported)
            fail("station " + std::to_string(st.id) + " both covered and reported uncovered");
    }
    return out;
}

} // namespace cbap
