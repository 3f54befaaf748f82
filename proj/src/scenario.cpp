// SPDX-License-Identifier: Apache-2.0

#include "cbap/scenario.hpp"
#include "cbap/rng.hpp"
#include "json_util.hpp"

namespace cbap {

void GeometryConfig::validate() const
{
    if (n < 0)
        throw InvalidParameter("GeometryConfig: n must be >= 0");
    if (!(dist_min > 0.0 && dist_min < radius))
        throw InvalidParameter("GeometryConfig: require 0 < dist_min < radius");
    if (!(angle_std >= 0.0))
        throw InvalidParameter("GeometryConfig: angle_std must be >= 0");
}

Scenario generate_scenario(const GeometryConfig& cfg)
{
    cfg.validate();
    Rng rng(cfg.seed);
    Scenario s;
    s.radius = cfg.radius;
    s.stations.reserve(static_cast<std::size_t>(cfg.n));
    for (int i = 0; i < cfg.n; ++i) {
        Station st;
        st.id = i;
        st.distance = rng.uniform(cfg.dist_min, cfg.radius);
        st.angle = normalize_angle(rng.normal(cfg.angle_mean, cfg.angle_std));
        s.stations.push_back(st);
    }
    return s;
}

std::string scenario_to_json(const Scenario& s)
{
    detail::json j;
    j["radius_m"] = s.radius;
    j["stations"] = detail::json::array();
    for (const auto& st : s.stations)
        j["stations"].push_back({{"id", st.id}, {"distance_m", st.distance}, {"angle_rad", st.angle}});
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text)
{
    using namespace detail;
    const json j = parse_json(text);
    Scenario s;
    s.radius = require_number(j, "radius_m", "scenario");
    const json& arr = require(j, "stations", "scenario");
    if (!arr.is_array())
        throw ParseError("scenario.stations: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "scenario.stations[" + std::to_string(i) + "]";
        Station st;
        st.id = static_cast<int>(require_integer(arr[i], "id", path));
        st.distance = require_number(arr[i], "distance_m", path);
        st.angle = require_number(arr[i], "angle_rad", path);
        s.stations.push_back(st);
    }
    try {
        s.validate();
    } catch (const InvalidParameter& e) {
        throw ParseError(e.what());
    }
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path)
{
    detail::write_text_file(path, scenario_to_json(s));
}

Scenario load_scenario(const std::filesystem::path& path)
{
    return scenario_from_json(detail::read_text_file(path));
}

} // namespace cbap
