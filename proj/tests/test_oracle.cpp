#include "doctest.h"
#include "lotforge/oracle.hpp"
#include "oracles.hpp"

using namespace lotforge;

namespace {

Instance chain(int T) {
    Instance in;
    in.num_warehouses = 1;
    in.num_retailers = 1;
    in.num_periods = T;
    in.retailer_warehouse = {0};
    in.demand = Matrix<std::int64_t>(1, T, 10);
    in.setup_cost = Matrix<double>(3, T, 0.0);
    in.holding_cost = Matrix<double>(3, T, 1.0);
    return in;
}

}  // namespace

TEST_CASE("zero demand costs nothing") {
    Instance in = chain(3);
    in.demand = Matrix<std::int64_t>(1, 3, 0);
    in.setup_cost = Matrix<double>(3, 3, 7.0);
    const OracleResult res = solve_exact(in);
    CHECK(res.cost == 0.0);
    CHECK(res.routes.empty());
}

TEST_CASE("single period pays every setup") {
    Instance in = chain(1);
    in.setup_cost(0, 0) = 11.0;
    in.setup_cost(1, 0) = 22.0;
    in.setup_cost(2, 0) = 33.0;
    const OracleResult res = solve_exact(in);
    CHECK(res.cost == 66.0);
    CHECK(res.routes == RouteAssignment{{0, 0, 0, 0, 0}});
}

TEST_CASE("route tie-break is lexicographic") {
    // Free setups and holding: every route costs the same.
    Instance in = chain(2);
    in.holding_cost = Matrix<double>(3, 2, 0.0);
    const OracleResult res = solve_exact(in);
    CHECK(res.cost == 0.0);
    CHECK(res.routes == RouteAssignment{{0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
}

TEST_CASE("agrees with route enumeration") {
    Rng rng(17);
    for (int n = 0; n < 30; ++n) {
        const Instance in = testing::random_tiny_instance(rng);
        OracleConfig cfg;
        cfg.max_setup_bits = 24;
        const OracleResult res = solve_exact(in, cfg);
        CHECK(res.cost == testing::route_enumeration_optimum(in));
        CHECK(check_feasible(in, res.solution, 1e-9).empty());
        CHECK(evaluate_cost(in, res.solution) == doctest::Approx(res.cost).epsilon(1e-12));
    }
}

TEST_CASE("forbidden routes") {
    Rng rng(23);
    for (int n = 0; n < 10; ++n) {
        const Instance in = testing::random_tiny_instance(rng);
        OracleConfig cfg;
        cfg.max_setup_bits = 24;
        for (int r = 0; r < in.num_retailers; ++r)
            for (int t = 1; t < in.num_periods; ++t)
                if (rng.uniform01() < 0.3) cfg.forbidden.insert({r, t - 1, t});
        const OracleResult res = solve_exact(in, cfg);
        CHECK(res.cost == testing::route_enumeration_optimum(in, cfg.forbidden));
        for (const Route& rt : res.routes) CHECK(cfg.forbidden.count({rt.retailer, rt.k2, rt.period}) == 0);
    }
    Instance in = chain(1);
    OracleConfig all;
    all.forbidden.insert({0, 0, 0});
    CHECK_THROWS_AS(solve_exact(in, all), std::invalid_argument);
}

TEST_CASE("serial and parallel agree") {
    Rng rng(29);
    for (int n = 0; n < 10; ++n) {
        const Instance in = testing::generated_tiny_instance(rng);
        OracleConfig a;
        a.max_setup_bits = 24;
        OracleConfig b = a;
        b.parallel = true;
        const OracleResult x = solve_exact(in, a), y = solve_exact(in, b);
        CHECK(x.cost == y.cost);
        CHECK(x.routes == y.routes);
    }
}

TEST_CASE("size guard") {
    const Instance in = chain(7);  // 3 * 7 = 21 setup variables
    CHECK_THROWS_AS(solve_exact(in), SizeGuardError);
    OracleConfig cfg;
    cfg.max_setup_bits = 21;
    CHECK_NOTHROW(solve_exact(in, cfg));
    Instance bad = chain(2);
    bad.retailer_warehouse = {4};
    CHECK_THROWS_AS(solve_exact(bad), std::invalid_argument);
}
