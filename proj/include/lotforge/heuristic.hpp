#ifndef LOTFORGE_HEURISTIC_HPP
#define LOTFORGE_HEURISTIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lotforge/instance.hpp"
#include "lotforge/rng.hpp"
#include "lotforge/solution.hpp"

namespace lotforge {

/// Multi-start randomized bottom-up DP heuristic settings.
struct HeuristicConfig {
    double alpha = 0.20;
    int iterations = 500;
    std::uint64_t seed = 1;
    bool parallel = false;
};

struct HeuristicResult {
    Solution best;
    double best_cost = 0.0;
    int best_iteration = 0;
    std::vector<double> per_iteration_costs;
    std::vector<std::uint64_t> iteration_seeds;
    double wall_time = 0.0;  // seconds
};

/// sc * (1 + u), u ~ U[0, alpha), for every warehouse and retailer and period.
/// Draw order: warehouses ascending, then retailers ascending, periods
/// ascending within a facility. The plant row is copied unchanged.
Matrix<double> randomize_setup_costs(const Instance& instance, double alpha, Rng& rng);

/// One bottom-up pass: retailers, then warehouses on the retailers' shipments,
/// then the plant (original costs) on the warehouses' shipments. `setup_cost`
/// drives the retailer and warehouse decisions; the returned cost uses the
/// instance's original costs.
Solution bottom_up_pass(const Instance& instance, const Matrix<double>& setup_cost);

/// Iteration `iteration` of a run seeded with `seed`; independent of every other iteration.
Solution run_iteration(const Instance& instance, double alpha, std::uint64_t seed, int iteration);

/// Serial reference implementation of the multi-start loop.
HeuristicResult run_serial(const Instance& instance, const HeuristicConfig& config);

/// OpenMP implementation; bit-identical results to run_serial.
HeuristicResult run_parallel(const Instance& instance, const HeuristicConfig& config);

/// Dispatches on config.parallel. Throws std::invalid_argument for an invalid
/// instance or config.
HeuristicResult run(const Instance& instance, const HeuristicConfig& config);

/// JSON lines {"iter":i,"cost":c,"seed":s}, iterations 1-based.
std::string iteration_log_jsonl(const HeuristicResult& result);

}  // namespace lotforge

#endif
