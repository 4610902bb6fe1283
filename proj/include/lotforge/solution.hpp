#ifndef LOTFORGE_SOLUTION_HPP
#define LOTFORGE_SOLUTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lotforge/instance.hpp"

namespace lotforge {

/// Plan in the space of the standard formulation. All matrices are
/// facility (flat index) x period. Stocks before period 1 and after the last
/// period are zero.
struct Solution {
    Matrix<double> x;        // production (plant) / inbound shipment (others)
    Matrix<std::uint8_t> y;  // setups
    Matrix<double> s;        // end-of-period stock
    double cost = 0.0;

    static Solution zeros(const Instance& instance);
};

/// One demand (retailer, period) routed through the network: produced at the
/// plant in k0, shipped to the warehouse in k1, to the retailer in k2.
struct Route {
    int retailer = 0;
    int period = 0;
    int k0 = 0;
    int k1 = 0;
    int k2 = 0;

    auto operator<=>(const Route&) const = default;
};

/// One route per positive demand. Periods are 0-based.
using RouteAssignment = std::vector<Route>;

inline constexpr double kDefaultFeasibilityTol = 1e-6;

/// Flow balance, setup enforcement, bounds, binarity and zero end stock.
/// Empty result means feasible. Throws std::invalid_argument on a dimension mismatch.
std::vector<std::string> check_feasible(const Instance& instance, const Solution& solution,
                                        double tol = kDefaultFeasibilityTol);

/// Setup plus holding cost under the instance's original costs.
double evaluate_cost(const Instance& instance, const Solution& solution);

/// Accumulates each route's demand along its path. Throws std::invalid_argument
/// if a route is out of order, misses a positive demand or repeats one.
Solution from_routes(const Instance& instance, const RouteAssignment& routes);

/// Per-unit holding cost of carrying one unit of demand (r, t) along the route.
double route_unit_cost(const Instance& instance, const Route& route);

/// CSV with header `facility,period,x,y,s` and a trailing `cost,<value>` line.
std::string solution_to_csv(const Instance& instance, const Solution& solution);

}  // namespace lotforge

#endif
