#include "doctest.h"
#include "lotforge/formulations.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/oracle.hpp"
#include "lotforge/preprocess.hpp"
#include "oracles.hpp"

using namespace lotforge;

namespace {

Instance flat_costs(int T, double hr, double hw, double sr, std::int64_t d) {
    Instance in;
    in.num_warehouses = 1;
    in.num_retailers = 1;
    in.num_periods = T;
    in.retailer_warehouse = {0};
    in.demand = Matrix<std::int64_t>(1, T, d);
    in.setup_cost = Matrix<double>(3, T, 50.0);
    in.holding_cost = Matrix<double>(3, T, 0.0);
    for (int t = 0; t < T; ++t) {
        in.setup_cost(2, t) = sr;
        in.holding_cost(1, t) = hw;
        in.holding_cost(2, t) = hr;
    }
    return in;
}

}  // namespace

TEST_CASE("cheap warehouse holding removes every later commodity") {
    const Instance in = flat_costs(4, 1.0, 0.5, 0.0, 10);
    const RemovalSet rem = compute_removals(in);
    for (int k = 0; k < 3; ++k) {
        CHECK(rem.t_min(0, k) == k + 1);
        for (int t = k + 1; t < 4; ++t) CHECK(rem.contains(0, k, t));
        CHECK_FALSE(rem.contains(0, k, k));
    }
    CHECK(rem.t_min(0, 3) == -1);
    CHECK(rem.np() == 6);
    CHECK(rem.pot() == 6);
    CHECK(rem.red() == 100.0);
}

TEST_CASE("expensive warehouse holding removes nothing") {
    const Instance in = flat_costs(5, 0.5, 1.0, 3.0, 10);
    const RemovalSet rem = compute_removals(in);
    CHECK(rem.np() == 0);
    CHECK(rem.triples().empty());
    CHECK(rem.red() == 0.0);
    const MipModel mc = build_mc(in);
    CHECK(apply_removals(mc, rem).structurally_equal(mc));
}

TEST_CASE("threshold from the retailer setup") {
    // Condition for k and t: 10 * (t - k) * (1 - 0.5) >= 12, first met at t - k = 3.
    const Instance in = flat_costs(6, 1.0, 0.5, 12.0, 10);
    const RemovalSet rem = compute_removals(in);
    for (int k = 0; k < 6; ++k) CHECK(rem.t_min(0, k) == (k + 3 < 6 ? k + 3 : -1));
    CHECK(rem.np() == testing::recount_removals(in));
}

TEST_CASE("apply_removals zeroes exactly the removed w2 bounds") {
    const Instance in = flat_costs(4, 1.0, 0.5, 0.0, 10);
    RemovalSet rem(1, 4);
    rem.set_t_min(0, 0, 2);
    const MipModel mc = build_mc(in);
    const MipModel cut = apply_removals(mc, rem);
    int zeroed = 0;
    for (std::size_t i = 0; i < mc.variables().size(); ++i) {
        const Variable& a = mc.variables()[i];
        const Variable& b = cut.variables()[i];
        const bool removed = a.id.family == VarFamily::W2 && a.id.k == 0 && a.id.t >= 2;
        if (removed) {
            CHECK(b.ub == 0.0);
            ++zeroed;
        } else {
            CHECK(a == b);
        }
    }
    CHECK(zeroed == 2);
    CHECK(cut.constraints() == mc.constraints());
    CHECK_THROWS_AS(apply_removals(build_std(in), rem), std::invalid_argument);
    CHECK_THROWS_AS(apply_removals(mc, RemovalSet(1, 5)), std::invalid_argument);
}

TEST_CASE("RemovalSet bookkeeping") {
    RemovalSet rem(2, 4);
    CHECK(rem.pot() == 12);
    rem.set_t_min(1, 1, 3);
    rem.set_t_min(0, 0, 1);
    CHECK(rem.np() == 4);
    CHECK(rem.triples() ==
          std::vector<RemovalSet::Triple>{{0, 0, 1}, {0, 0, 2}, {0, 0, 3}, {1, 1, 3}});
    CHECK_THROWS_AS(rem.set_t_min(0, 2, 2), std::out_of_range);
    CHECK_THROWS_AS(rem.set_t_min(0, 2, 4), std::out_of_range);
    CHECK(removal_report_csv(rem) == "retailer,k,t_min\n0,1,2\n1,2,4\nnp,pot,red\n4,12,33.333333333333336\n");
}

TEST_CASE("benchmark-size instance: counts agree with a recount") {
    InstanceSpec spec;
    spec.seed = 3;
    const Instance in = generate(spec);
    const RemovalSet rem = compute_removals(in);
    CHECK(rem.pot() == 5250);
    CHECK(rem.np() == testing::recount_removals(in));
    CHECK(rem.red() == doctest::Approx(reduction(rem.np(), 5250)).epsilon(1e-12));
    CHECK(rem.red() == doctest::Approx(100.0 * static_cast<double>(testing::recount_removals(in)) / 5250.0));
}

TEST_CASE("removal keeps the tiny optimum") {
    Rng rng(5);
    for (int n = 0; n < 15; ++n) {
        const Instance in = testing::generated_tiny_instance(rng, 1, 2, 4);
        OracleConfig restricted;
        for (const auto& t : compute_removals(in).triples()) restricted.forbidden.insert({t.retailer, t.k, t.t});
        CHECK(solve_exact(in, restricted).cost == solve_exact(in).cost);
    }
}
