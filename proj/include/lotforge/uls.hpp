#ifndef LOTFORGE_ULS_HPP
#define LOTFORGE_ULS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace lotforge {

/// Single-facility uncapacitated lot-sizing plan.
struct UlsPlan {
    std::vector<double> produce;
    std::vector<std::uint8_t> setup;
    double cost = 0.0;
};

/// Wagner-Whitin: min sum_t sc_t y_t + hc_t s_t subject to flow balance,
/// zero initial and final stock, no capacity. O(T^2).
///
/// Each period's demand is served by exactly one production period. A block
/// of periods whose total demand is zero is not charged a setup. Among equal
/// costs the earliest production period wins.
///
/// Throws std::invalid_argument on negative or non-finite input or when the
/// three vectors differ in length.
UlsPlan solve_uls(std::span<const double> demand, std::span<const double> setup_cost,
                  std::span<const double> holding_cost);

}  // namespace lotforge

#endif
