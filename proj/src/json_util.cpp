// SPDX-License-Identifier: Apache-2.0

#include "json_util.hpp"

#include <fstream>
#include <sstream>

namespace cbap {

namespace detail {

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidParameter("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw InvalidParameter("write failed for '" + path.string() + "'");
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // byte offset -> line/column
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what());
    }
}

const json& require(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        throw ParseError(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(path + "." + key + ": missing");
    return *it;
}

double number_at(const json& value, const std::string& path)
{
    if (!value.is_number())
        throw ParseError(path + ": expected a number");
    return value.get<double>();
}

long long integer_at(const json& value, const std::string& path)
{
    if (!value.is_number_integer())
        throw ParseError(path + ": expected an integer");
    return value.get<long long>();
}

double require_number(const json& obj, const std::string& key, const std::string& path)
{
    return number_at(require(obj, key, path), path + "." + key);
}

long long require_integer(const json& obj, const std::string& key, const std::string& path)
{
    return integer_at(require(obj, key, path), path + "." + key);
}

} // namespace detail

} // namespace cbap
