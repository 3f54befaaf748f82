// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cbap/beam_allocator.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cbap {

/// {"kind": "adaptive"|"fixed",
///  "sectors": [{"start_rad", "width_rad", "members": [ids]}],
///  "uncovered": [ids]}
std::string plan_to_json(const SectorPlan& plan);
SectorPlan plan_from_json(std::string_view text);

void save_plan(const SectorPlan& plan, const std::filesystem::path& path);
SectorPlan load_plan(const std::filesystem::path& path);

} // namespace cbap
