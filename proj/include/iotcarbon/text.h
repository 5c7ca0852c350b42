#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace iotcarbon {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Fixed-point with `digits` decimals.
std::string format_fixed(double value, int digits);

/// Quotes a CSV cell when it contains a comma, quote or newline.
std::string csv_escape(std::string_view cell);

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_line(std::string_view line);

std::vector<std::string> split(std::string_view text, char sep);
std::string trim(std::string_view text);

}  // namespace iotcarbon
