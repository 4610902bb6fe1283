#ifndef LOTFORGE_ORACLE_HPP
#define LOTFORGE_ORACLE_HPP

#include <set>
#include <stdexcept>
#include <tuple>

#include "lotforge/instance.hpp"
#include "lotforge/solution.hpp"

namespace lotforge {

struct OracleConfig {
    /// Largest admissible (1 + W + R) * T.
    int max_setup_bits = 20;
    /// (retailer, k2, t) triples: demand t of the retailer may not be shipped
    /// from its warehouse in period k2. Periods 0-based.
    std::set<std::tuple<int, int, int>> forbidden;
    bool parallel = false;
};

struct OracleResult {
    double cost = 0.0;
    Solution solution;
    RouteAssignment routes;
};

class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact optimum by enumerating setup patterns.
///
/// For a fixed pattern there are no capacities, so the flows separate by
/// demand: each demand (r, t) takes its cheapest route k0 <= k1 <= k2 <= t
/// through open setups. The retailer choices then also separate, so the plant
/// and warehouse patterns are enumerated jointly and each retailer's own
/// pattern is minimized independently under them. Ties go to the smallest
/// pattern and to the lexicographically smallest route.
///
/// Throws SizeGuardError when the instance has more than max_setup_bits setup
/// variables, std::invalid_argument for an invalid instance or an instance no
/// pattern can serve (forbidden routes only).
OracleResult solve_exact(const Instance& instance, const OracleConfig& config = {});

}  // namespace lotforge

#endif
