#include "lotforge/heuristic.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lotforge/number_format.hpp"
#include "lotforge/uls.hpp"

namespace lotforge {

Matrix<double> randomize_setup_costs(const Instance& in, double alpha, Rng& rng) {
    Matrix<double> out = in.setup_cost;
    for (int i = 1; i < in.num_facilities(); ++i)
        for (int t = 0; t < in.num_periods; ++t) {
            const double u = alpha * rng.uniform01();
            out(i, t) = in.setup_cost(i, t) * (1.0 + u);
        }
    return out;
}

namespace {

// Writes a single-facility plan into the solution rows of facility i.
void place_plan(Solution& sol, int i, const UlsPlan& plan, std::span<const double> demand) {
    double stock = 0.0;
    for (std::size_t t = 0; t < demand.size(); ++t) {
        sol.x(i, t) = plan.produce[t];
        sol.y(i, t) = plan.setup[t];
        stock += plan.produce[t] - demand[t];
        sol.s(i, t) = stock;
    }
}

void check_config(const HeuristicConfig& config) {
    if (!std::isfinite(config.alpha) || config.alpha < 0.0)
        throw std::invalid_argument("heuristic: alpha must be finite and nonnegative");
    if (config.iterations < 1) throw std::invalid_argument("heuristic: iterations must be >= 1");
}

}  // namespace

Solution bottom_up_pass(const Instance& in, const Matrix<double>& setup_cost) {
    const auto T = static_cast<std::size_t>(in.num_periods);
    Solution sol = Solution::zeros(in);

    std::vector<std::vector<double>> warehouse_demand(in.num_warehouses, std::vector<double>(T, 0.0));
    std::vector<double> demand(T);
    for (int r = 0; r < in.num_retailers; ++r) {
        const int i = in.retailer(r);
        for (std::size_t t = 0; t < T; ++t) demand[t] = static_cast<double>(in.demand(r, t));
        const UlsPlan plan = solve_uls(demand, setup_cost.row(i), in.holding_cost.row(i));
        place_plan(sol, i, plan, demand);
        auto& wd = warehouse_demand[in.retailer_warehouse[r]];
        for (std::size_t t = 0; t < T; ++t) wd[t] += plan.produce[t];
    }

    std::vector<double> plant_demand(T, 0.0);
    for (int w = 0; w < in.num_warehouses; ++w) {
        const int i = in.warehouse(w);
        const UlsPlan plan = solve_uls(warehouse_demand[w], setup_cost.row(i), in.holding_cost.row(i));
        place_plan(sol, i, plan, warehouse_demand[w]);
        for (std::size_t t = 0; t < T; ++t) plant_demand[t] += plan.produce[t];
    }

    const int p = Instance::plant();
    const UlsPlan plan = solve_uls(plant_demand, in.setup_cost.row(p), in.holding_cost.row(p));
    place_plan(sol, p, plan, plant_demand);

    sol.cost = evaluate_cost(in, sol);
    return sol;
}

Solution run_iteration(const Instance& in, double alpha, std::uint64_t seed, int iteration) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(iteration)));
    return bottom_up_pass(in, randomize_setup_costs(in, alpha, rng));
}

HeuristicResult run_serial(const Instance& in, const HeuristicConfig& config) {
    check_config(config);
    require_valid(in);
    const auto start = std::chrono::steady_clock::now();

    HeuristicResult res;
    res.per_iteration_costs.resize(config.iterations);
    res.iteration_seeds.resize(config.iterations);
    res.best_cost = std::numeric_limits<double>::infinity();
    for (int it = 0; it < config.iterations; ++it) {
        Solution sol = run_iteration(in, config.alpha, config.seed, it);
        res.per_iteration_costs[it] = sol.cost;
        res.iteration_seeds[it] = substream_seed(config.seed, it);
        if (sol.cost < res.best_cost) {
            res.best_cost = sol.cost;
            res.best_iteration = it;
            res.best = std::move(sol);
        }
    }
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

HeuristicResult run_parallel(const Instance& in, const HeuristicConfig& config) {
    check_config(config);
    require_valid(in);
    const auto start = std::chrono::steady_clock::now();

    HeuristicResult res;
    const int n = config.iterations;
    res.per_iteration_costs.resize(n);
    res.iteration_seeds.resize(n);

#pragma omp parallel for schedule(dynamic, 4)
    for (int it = 0; it < n; ++it) {
        res.per_iteration_costs[it] = run_iteration(in, config.alpha, config.seed, it).cost;
        res.iteration_seeds[it] = substream_seed(config.seed, it);
    }

    // Deterministic fold: lowest cost, ties to the lowest iteration.
    int best = 0;
    for (int it = 1; it < n; ++it)
        if (res.per_iteration_costs[it] < res.per_iteration_costs[best]) best = it;
    res.best_iteration = best;
    res.best_cost = res.per_iteration_costs[best];
    res.best = run_iteration(in, config.alpha, config.seed, best);
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

HeuristicResult run(const Instance& in, const HeuristicConfig& config) {
    return config.parallel ? run_parallel(in, config) : run_serial(in, config);
}

std::string iteration_log_jsonl(const HeuristicResult& result) {
    std::string out;
    for (std::size_t i = 0; i < result.per_iteration_costs.size(); ++i) {
        out += "{\"iter\":" + std::to_string(i + 1) + ",\"cost\":" + format_double(result.per_iteration_costs[i]) +
               ",\"seed\":" + std::to_string(result.iteration_seeds[i]) + "}\n";
    }
    return out;
}

}  // namespace lotforge
