#include "lotforge/number_format.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace lotforge {

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // also folds -0
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::optional<double> parse_double(std::string_view token) {
    if (token.empty()) return std::nullopt;
    if (token == "inf" || token == "+inf" || token == "infinity" || token == "+infinity")
        return std::numeric_limits<double>::infinity();
    if (token == "-inf" || token == "-infinity") return -std::numeric_limits<double>::infinity();
    if (token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::optional<long long> parse_integer(std::string_view token) {
    if (token.empty()) return std::nullopt;
    if (token.front() == '+') token.remove_prefix(1);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

}  // namespace lotforge
