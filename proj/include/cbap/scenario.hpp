// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cbap/model.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace cbap {

/// Placement distribution for stations around the AP.
struct GeometryConfig {
    int n = 50;
    double radius = 10.0;
    double dist_min = 1.0;
    double angle_mean = kPi;      // 180 deg
    double angle_std = kPi / 2.0; // 90 deg
    std::uint64_t seed = 1;

    void validate() const;
};

/// Distances i.i.d. uniform on [dist_min, radius]; angles i.i.d.
/// normal(angle_mean, angle_std) wrapped into [0, 2*pi). Station ids are
/// 0..n-1 in draw order. Deterministic per seed.
Scenario generate_scenario(const GeometryConfig& cfg);

/// JSON: {"radius_m": r, "stations": [{"id", "distance_m", "angle_rad"}, ...]}
std::string scenario_to_json(const Scenario& s);
/// Throws ParseError (with line/column or field path) on malformed input
/// and on scenarios violating Scenario invariants.
Scenario scenario_from_json(std::string_view text);

void save_scenario(const Scenario& s, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

} // namespace cbap
