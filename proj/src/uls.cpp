#include "lotforge/uls.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lotforge {

UlsPlan solve_uls(std::span<const double> demand, std::span<const double> setup_cost,
                  std::span<const double> holding_cost) {
    const std::size_t T = demand.size();
    if (setup_cost.size() != T || holding_cost.size() != T)
        throw std::invalid_argument("solve_uls: demand, setup and holding vectors differ in length");
    for (std::size_t t = 0; t < T; ++t) {
        for (double v : {demand[t], setup_cost[t], holding_cost[t]})
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("solve_uls: inputs must be finite and nonnegative");
    }

    // best[t] = optimal cost of covering periods [0, t); from[t] = first period of the last block.
    std::vector<double> best(T + 1, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> from(T + 1, 0);
    best[0] = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        // Walk the block start k downwards; each step adds hc_k for every unit of the block.
        double block_demand = 0.0;
        double block_holding = 0.0;
        for (std::size_t k = t + 1; k-- > 0;) {
            if (k < t) block_holding += holding_cost[k] * block_demand;
            block_demand += demand[k];
            const double setup = block_demand > 0.0 ? setup_cost[k] : 0.0;
            const double candidate = best[k] + setup + block_holding;
            if (candidate <= best[t + 1]) {
                best[t + 1] = candidate;
                from[t + 1] = k;
            }
        }
    }

    UlsPlan plan;
    plan.produce.assign(T, 0.0);
    plan.setup.assign(T, 0);
    plan.cost = best[T];
    for (std::size_t end = T; end > 0;) {
        const std::size_t k = from[end];
        double qty = 0.0;
        for (std::size_t l = k; l < end; ++l) qty += demand[l];
        if (qty > 0.0) {
            plan.produce[k] = qty;
            plan.setup[k] = 1;
        }
        end = k;
    }
    return plan;
}

}  // namespace lotforge
