#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecotrip::text {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

bool parse_double(std::string_view s, double& out);
bool parse_int64(std::string_view s, std::int64_t& out);

std::vector<std::string_view> split(std::string_view line, char sep);
std::string_view trim(std::string_view s);

} // namespace ecotrip::text
