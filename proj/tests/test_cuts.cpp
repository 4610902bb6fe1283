#include <limits>

#include "doctest.h"
#include "lotforge/cuts.hpp"
#include "lotforge/formulations.hpp"
#include "oracles.hpp"

using namespace lotforge;

namespace {

constexpr double kAll = -std::numeric_limits<double>::infinity();

constexpr CutFamily kFamilies[] = {CutFamily::SingleLevelStd, CutFamily::TwoLevelStd,  CutFamily::ThreeLevelStd,
                                   CutFamily::SingleLevel3lf, CutFamily::TwoLevel3lf, CutFamily::ThreeLevel3lf};

std::vector<Cut> separate(CutFamily f, const Instance& in, const VarValueMap& p, double tol) {
    switch (f) {
        case CutFamily::SingleLevelStd: return separate_single_level_std(in, p, tol);
        case CutFamily::TwoLevelStd: return separate_two_level_std(in, p, tol);
        case CutFamily::ThreeLevelStd: return separate_three_level_std(in, p, tol);
        case CutFamily::SingleLevel3lf: return separate_single_level_3lf(in, p, tol);
        case CutFamily::TwoLevel3lf: return separate_two_level_3lf(in, p, tol);
        case CutFamily::ThreeLevel3lf: return separate_three_level_3lf(in, p, tol);
    }
    return {};
}

// One warehouse, two retailers; retailer demands (d, d, d) each.
Instance fan(int T, std::int64_t d) {
    Instance in;
    in.num_warehouses = 1;
    in.num_retailers = 2;
    in.num_periods = T;
    in.retailer_warehouse = {0, 0};
    in.demand = Matrix<std::int64_t>(2, T, d);
    in.setup_cost = Matrix<double>(4, T, 1.0);
    in.holding_cost = Matrix<double>(4, T, 1.0);
    return in;
}

VarValueMap zero_point(const Instance& in) {
    VarValueMap p;
    for (const MipModel& m : {build_std(in), build_3lf(in)})
        for (const Variable& v : m.variables()) p[v.id] = 0.0;
    return p;
}

}  // namespace

TEST_CASE("eval_inequality") {
    const Instance in = fan(3, 5);
    const VarValueMap z = zero_point(in);
    SUBCASE("all-zero point against S = L") {
        const Cut c = make_single_level_std(in, 0, 2, 0b111);
        CHECK(eval_inequality(c, z) == -30.0);
        CHECK(violation(c, z) == 30.0);
    }
    SUBCASE("hand computation on two periods") {
        // Plant produces everything in period 1; cut with S = {2}: x_1 + d_22 y_2 >= d_12.
        const Instance two = fan(2, 5);
        const Solution sol = from_routes(two, {{0, 0, 0, 0, 0}, {0, 1, 0, 0, 1}, {1, 0, 0, 0, 0}, {1, 1, 0, 0, 1}});
        const VarValueMap p = std_point(two, sol);
        const Cut c = make_single_level_std(two, 0, 1, 0b10);
        CHECK(c.rhs == 20.0);
        CHECK(eval_inequality(c, p) == 20.0 - 20.0);
        const Cut c2 = make_single_level_std(two, 0, 1, 0b11);
        CHECK(eval_inequality(c2, p) == 20.0 * 1 + 0.0 - 20.0);
    }
    SUBCASE("missing variable") {
        VarValueMap p = z;
        p.erase(VarId::x(FacilityId{}, 0));
        CHECK_THROWS_AS(eval_inequality(make_single_level_std(in, 0, 2, 0), p), std::out_of_range);
    }
    SUBCASE("lot-for-lot satisfies every single-level member") {
        RouteAssignment routes;
        for (int r = 0; r < 2; ++r)
            for (int t = 0; t < 3; ++t) routes.push_back({r, t, t, t, t});
        const VarValueMap p = std_point(in, from_routes(in, routes));
        for (int i = 0; i < in.num_facilities(); ++i)
            for (int l = 0; l < 3; ++l)
                for (std::uint64_t m = 0; m < 8; ++m) CHECK(eval_inequality(make_single_level_std(in, i, l, m), p) >= 0);
    }
}

TEST_CASE("separators on trivial points") {
    const Instance in = fan(4, 250);
    SUBCASE("open everywhere, lot-for-lot: nothing") {
        RouteAssignment routes;
        for (int r = 0; r < 2; ++r)
            for (int t = 0; t < 4; ++t) routes.push_back({r, t, t, t, t});
        VarValueMap p = std_point(in, from_routes(in, routes));
        const VarValueMap lf = three_level_point(in, routes);
        p.insert(lf.begin(), lf.end());
        for (CutFamily f : kFamilies) CHECK(separate(f, in, p, 1e-6).empty());
    }
    SUBCASE("closed network") {
        const VarValueMap z = zero_point(in);
        const auto sl = separate_single_level_std(in, z, 10.0);
        CHECK(sl.size() == static_cast<std::size_t>(in.num_facilities() * 4));
        for (const Cut& c : sl) {
            CHECK(c.params.masks[0] == (std::uint64_t{1} << (c.params.l + 1)) - 1);
            CHECK(violation(c, z) == c.rhs);
        }
        // Plant row with l = 1 (period 2): d_{1l} = 2 retailers * 2 periods * 250.
        bool found = false;
        for (const Cut& c : sl)
            if (c.params.owner == 0 && c.params.l == 1) found = violation(c, z) == 1000.0;
        CHECK(found);
        for (const Cut& c : separate_two_level_std(in, z, 10.0)) CHECK(violation(c, z) == c.rhs);
        for (const Cut& c : separate_three_level_std(in, z, 10.0)) {
            CHECK(c.params.owner == 0);
            CHECK(violation(c, z) == static_cast<double>(testing::cumulative(in, 0, 0, c.params.l)));
        }
        for (const Cut& c : separate_three_level_3lf(in, z, 10.0)) CHECK(violation(c, z) == c.rhs);
    }
}

TEST_CASE("separation matches subset brute force") {
    Rng rng(71);
    testing::TinyOptions opt;
    opt.min_periods = 3;
    opt.max_periods = 6;
    for (int n = 0; n < 6; ++n) {
        const Instance in = testing::random_tiny_instance(rng, opt);
        VarValueMap p = testing::random_fractional_point(in, rng, false);
        const VarValueMap q = testing::random_fractional_point(in, rng, true);
        p.insert(q.begin(), q.end());
        for (CutFamily f : kFamilies) {
            const std::vector<Cut> cuts = separate(f, in, p, kAll);
            const std::vector<CutParams> all = testing::all_structures(in, f);
            REQUIRE(cuts.size() == all.size());
            for (std::size_t j = 0; j < cuts.size(); ++j) {
                const testing::BruteSeparation b = testing::brute_force_separation(in, p, f, cuts[j].params);
                CHECK(cuts[j].params.owner == all[j].owner);
                CHECK(cuts[j].params.l == all[j].l);
                CHECK(cuts[j].params.splits == all[j].splits);
                CHECK(violation(cuts[j], p) == b.max_violation);
                CHECK(cuts[j].params.masks == b.inspection_masks);
            }
            // With a threshold, exactly the structures above it come back.
            std::size_t above = 0;
            for (const CutParams& s : all) above += testing::brute_force_separation(in, p, f, s).max_violation > 2.0;
            const std::vector<Cut> strict = separate(f, in, p, 2.0);
            CHECK(strict.size() == above);
            for (const Cut& c : strict) CHECK(violation(c, p) > 2.0);
        }
    }
}

TEST_CASE("builders validate their parameters") {
    const Instance in = fan(3, 1);
    CHECK_THROWS_AS(make_single_level_std(in, 9, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_two_level_std(in, 3, 2, 2, 0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_two_level_std(in, 0, 1, 2, 2, 0, {0}), std::invalid_argument);
    CHECK_THROWS_AS(make_three_level_std(in, 1, 0, 1, 0, {0}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(make_two_level_3lf(in, 0, 2, 1, 2, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_three_level_3lf(in, 0, 2, 1, 1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("key identifies family and parameters") {
    const Instance in = fan(3, 1);
    CHECK(make_single_level_std(in, 0, 2, 1).key() == make_single_level_std(in, 0, 2, 1).key());
    CHECK(make_single_level_std(in, 0, 2, 1).key() != make_single_level_std(in, 0, 2, 3).key());
    CHECK(make_single_level_3lf(in, 0, 0, 2, 1).key() != make_single_level_std(in, 0, 2, 1).key());
    CHECK(family_tag(CutFamily::ThreeLevel3lf) == "thl_3lf");
    CHECK(is_std_family(CutFamily::TwoLevelStd));
    CHECK_FALSE(is_std_family(CutFamily::TwoLevel3lf));
}
