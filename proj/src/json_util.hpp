// SPDX-License-Identifier: Apache-2.0
//
// Internal helpers for reading JSON documents with useful error context.

#pragma once

#include "cbap/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace cbap::detail {

using json = nlohmann::json;

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses `text`; syntax errors become ParseError("line L, column C: ...").
json parse_json(std::string_view text);

/// Required member of the given JSON type; missing or mistyped members throw
/// ParseError naming `path.key`.
const json& require(const json& obj, const std::string& key, const std::string& path);
double require_number(const json& obj, const std::string& key, const std::string& path);
long long require_integer(const json& obj, const std::string& key, const std::string& path);

double number_at(const json& value, const std::string& path);
long long integer_at(const json& value, const std::string& path);

} // namespace cbap::detail
