// SPDX-License-Identifier: Apache-2.0

#include "cbap/plan_io.hpp"
#include "json_util.hpp"

namespace cbap {

std::string plan_to_json(const SectorPlan& plan)
{
    detail::json j;
    j["kind"] = std::string(to_string(plan.kind));
    j["sectors"] = detail::json::array();
    for (const auto& s : plan.sectors)
        j["sectors"].push_back({{"start_rad", s.start}, {"width_rad", s.width}, {"members", s.members}});
    j["uncovered"] = plan.uncovered;
    return j.dump(2) + "\n";
}

SectorPlan plan_from_json(std::string_view text)
{
    using namespace detail;
    const json j = parse_json(text);
    SectorPlan plan;
    const json& kind = require(j, "kind", "plan");
    if (!kind.is_string())
        throw ParseError("plan.kind: expected a string");
    try {
        plan.kind = parse_plan_kind(kind.get<std::string>());
    } catch (const InvalidParameter& e) {
        throw ParseError(std::string("plan.kind: ") + e.what());
    }

    const json& secs = require(j, "sectors", "plan");
    if (!secs.is_array())
        throw ParseError("plan.sectors: expected an array");
    for (std::size_t i = 0; i < secs.size(); ++i) {
        const std::string path = "plan.sectors[" + std::to_string(i) + "]";
        SectorSpec s;
        s.start = require_number(secs[i], "start_rad", path);
        s.width = require_number(secs[i], "width_rad", path);
        const json& mem = require(secs[i], "members", path);
        if (!mem.is_array())
            throw ParseError(path + ".members: expected an array");
        for (std::size_t k = 0; k < mem.size(); ++k)
            s.members.push_back(static_cast<int>(integer_at(mem[k], path + ".members[" + std::to_string(k) + "]")));
        plan.sectors.push_back(std::move(s));
    }
    if (const auto it = j.find("uncovered"); it != j.end()) {
        if (!it->is_array())
            throw ParseError("plan.uncovered: expected an array");
        for (std::size_t k = 0; k < it->size(); ++k)
            plan.uncovered.push_back(static_cast<int>(integer_at((*it)[k], "plan.uncovered[" + std::to_string(k) + "]")));
    }
    return plan;
}

void save_plan(const SectorPlan& plan, const std::filesystem::path& path)
{
    detail::write_text_file(path, plan_to_json(plan));
}

SectorPlan load_plan(const std::filesystem::path& path)
{
    return plan_from_json(detail::read_text_file(path));
}

} // namespace cbap
