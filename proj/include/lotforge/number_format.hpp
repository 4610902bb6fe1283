#ifndef LOTFORGE_NUMBER_FORMAT_HPP
#define LOTFORGE_NUMBER_FORMAT_HPP

#include <optional>
#include <string>
#include <string_view>

namespace lotforge {

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of a whole token as a double; accepts "inf", "+inf", "-inf".
std::optional<double> parse_double(std::string_view token);

std::optional<long long> parse_integer(std::string_view token);

}  // namespace lotforge

#endif
