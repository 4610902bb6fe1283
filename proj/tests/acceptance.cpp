// Acceptance run: one PASS/FAIL/SKIP line per criterion. `--only <name>`
// restricts the run to one criterion. Exit status is nonzero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lotforge/cut_loop.hpp"
#include "lotforge/cuts.hpp"
#include "lotforge/formulations.hpp"
#include "lotforge/heuristic.hpp"
#include "lotforge/lp_format.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/oracle.hpp"
#include "lotforge/preprocess.hpp"
#include "lotforge/uls.hpp"
#include "oracles.hpp"

using namespace lotforge;

namespace {

struct Outcome {
    enum Kind { Pass, Fail, Skip } kind = Pass;
    std::string detail;
};

/// Collects failures; the first few are kept for the report line.
class Tally {
public:
    void fail(const std::string& what) {
        if (failures_++ < 3) first_.push_back(what);
    }
    void expect(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {Outcome::Pass, summary};
        std::string d = summary + "; " + std::to_string(failures_) + " failure(s):";
        for (const std::string& f : first_) d += " [" + f + "]";
        return {Outcome::Fail, d};
    }

private:
    int failures_ = 0;
    std::vector<std::string> first_;
};

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string num(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

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

OracleConfig wide_oracle() {
    OracleConfig c;
    c.max_setup_bits = 24;
    return c;
}

// ---------------------------------------------------------------------------

Outcome dp_exactness() {
    Rng rng(101);
    Tally tally;
    for (int n = 0; n < 500; ++n) {
        const int T = static_cast<int>(rng.uniform_int(1, 12));
        std::vector<double> d(T), sc(T), hc(T);
        for (int t = 0; t < T; ++t) {
            d[t] = static_cast<double>(rng.uniform_int(0, 100));
            sc[t] = rng.uniform_real(0.0, 1000.0);
            hc[t] = rng.uniform_real(0.0, 1000.0);
        }
        const double got = solve_uls(d, sc, hc).cost;
        const double want = testing::brute_force_uls(d, sc, hc);
        tally.expect(close_rel(got, want, 1e-9), "case " + std::to_string(n) + ": " + num(got) + " vs " + num(want));
    }
    return tally.outcome("500 instances, T<=12, rel tol 1e-9");
}

Outcome oracle_consistency() {
    Rng rng(202);
    Tally tally;
    for (int n = 0; n < 100; ++n) {
        const Instance in = testing::random_tiny_instance(rng);
        const double a = solve_exact(in, wide_oracle()).cost;
        const double b = testing::route_enumeration_optimum(in);
        tally.expect(a == b, "instance " + std::to_string(n) + ": " + num(a) + " vs " + num(b));
    }
    return tally.outcome("100 instances (W<=2, R<=3, T<=4), exact equality");
}

Outcome heuristic_soundness() {
    Rng rng(303);
    Tally tally;
    constexpr double alpha = 0.20;
    constexpr int iters = 500;
    constexpr std::uint64_t seed = 17;
    double gap_sum = 0.0;
    double gap_max = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Instance in = testing::generated_tiny_instance(rng);
        const double opt = solve_exact(in, wide_oracle()).cost;
        for (int it = 0; it < iters; ++it) {
            const Solution s = run_iteration(in, alpha, seed, it);
            const auto v = check_feasible(in, s, 1e-6);
            if (!v.empty()) tally.fail("instance " + std::to_string(n) + " iteration " + std::to_string(it) + ": " + v[0]);
        }
        const HeuristicResult h = run_serial(in, {alpha, iters, seed, false});
        // Equal costs may be summed in different orders.
        tally.expect(h.best_cost >= opt * (1.0 - 1e-12),
                     "instance " + std::to_string(n) + ": best " + num(h.best_cost) + " < oracle " + num(opt));
        const double g = gap_bstar(h.best_cost, opt);
        gap_sum += g;
        gap_max = std::max(gap_max, g);
    }
    const double mean = gap_sum / 50.0;
    tally.expect(mean <= 15.0, "mean gap_bstar " + num(mean) + "% > 15%");
    return tally.outcome("50 instances, 25000 iterates feasible; mean gap_bstar " + num(mean) + "%, max " +
                         num(gap_max) + "%");
}

Outcome inequality_validity() {
    Rng rng(404);
    Tally tally;
    long long members = 0;
    int solutions = 0;
    for (int n = 0; n < 100; ++n) {
        const Instance in = testing::random_tiny_instance(rng);
        std::vector<std::vector<CutParams>> structures;
        for (CutFamily f : kFamilies) structures.push_back(testing::all_structures(in, f));
        for (int j = 0; j < 10; ++j, ++solutions) {
            const RouteAssignment routes = testing::random_routes(in, rng);
            VarValueMap p = std_point(in, from_routes(in, routes));
            const VarValueMap lf = three_level_point(in, routes);
            p.insert(lf.begin(), lf.end());
            for (std::size_t fi = 0; fi < std::size(kFamilies); ++fi) {
                for (const CutParams& s : structures[fi]) {
                    const double v = testing::brute_force_separation(in, p, kFamilies[fi], s).max_violation;
                    ++members;
                    tally.expect(v <= 1e-6, family_tag(kFamilies[fi]) + " violated by " + num(v));
                }
                tally.expect(separate(kFamilies[fi], in, p, 1e-6).empty(),
                             family_tag(kFamilies[fi]) + " separator cut off an integer solution");
            }
        }
    }
    return tally.outcome(std::to_string(solutions) + " integer solutions, every S of " + std::to_string(members) +
                         " structures, tol 1e-6");
}

Outcome separation_exactness() {
    Rng rng(505);
    testing::TinyOptions opt;
    opt.min_periods = 6;
    opt.max_periods = 6;
    Tally tally;
    long long checked = 0;
    for (int n = 0; n < 20; ++n) {
        const Instance in = testing::random_tiny_instance(rng, opt);
        VarValueMap p = testing::random_fractional_point(in, rng, false);
        const VarValueMap q = testing::random_fractional_point(in, rng, true);
        p.insert(q.begin(), q.end());
        for (CutFamily f : kFamilies) {
            const std::string tag = family_tag(f);
            const std::vector<Cut> cuts = separate(f, in, p, -std::numeric_limits<double>::infinity());
            const std::vector<CutParams> all = testing::all_structures(in, f);
            if (cuts.size() != all.size()) {
                tally.fail(tag + ": " + std::to_string(cuts.size()) + " cuts for " + std::to_string(all.size()) +
                           " structures");
                continue;
            }
            for (std::size_t j = 0; j < cuts.size(); ++j) {
                const CutParams& c = cuts[j].params;
                const bool same = c.owner == all[j].owner && c.level == all[j].level &&
                                  c.successor_level == all[j].successor_level && c.l == all[j].l &&
                                  c.splits == all[j].splits;
                if (!same) {
                    tally.fail(tag + ": structure order differs at " + std::to_string(j));
                    continue;
                }
                const testing::BruteSeparation b = testing::brute_force_separation(in, p, f, all[j]);
                const double v = violation(cuts[j], p);
                tally.expect(v == b.max_violation, tag + ": inspection " + num(v) + " vs brute " + num(b.max_violation));
                tally.expect(c.masks == b.inspection_masks, tag + ": S sets differ from the tie-inclusive rule");
                ++checked;
            }
        }
    }
    return tally.outcome(std::to_string(checked) + " structures on T=6 fractional points, exact match");
}

Outcome mapping_suite() {
    Rng rng(606);
    testing::TinyOptions opt;
    opt.min_periods = 3;
    opt.max_periods = 4;
    Tally tally;
    int transfers = 0;
    for (int n = 0; n < 200; ++n) {
        const Instance in = testing::random_tiny_instance(rng, opt);
        const int T = in.num_periods;
        // Convex combination of route-derived integer points.
        const int parts = static_cast<int>(rng.uniform_int(2, 4));
        std::vector<double> lambda(parts);
        for (double& v : lambda) v = rng.uniform_real(0.05, 1.0);
        const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
        VarValueMap p3;
        for (int j = 0; j < parts; ++j)
            for (const auto& [id, v] : three_level_point(in, testing::random_routes(in, rng)))
                p3[id] += lambda[j] / total * v;

        const MipModel lf = build_3lf(in), st = build_std(in);
        const auto lf_viol = evaluate_point(lf, p3, 1e-6);
        tally.expect(lf_viol.empty(), "point " + std::to_string(n) + " not 3LF-feasible");
        const VarValueMap ps = map_3lf_to_std(in, p3);
        const auto st_viol = evaluate_point(st, ps, 1e-6);
        tally.expect(st_viol.empty(),
                     "point " + std::to_string(n) + ": mapped point violates " + (st_viol.empty() ? "" : st_viol[0]));
        const double o3 = objective_value(lf, p3), os = objective_value(st, ps);
        tally.expect(close_rel(os, o3, 1e-6), "point " + std::to_string(n) + ": objective " + num(os) + " vs " + num(o3));

        auto mask = [&](int first, int last) {
            std::uint64_t m = 0;
            for (int k = first; k <= last; ++k)
                if (rng.uniform01() < 0.5) m |= std::uint64_t{1} << k;
            return m;
        };
        auto transfer = [&](const std::string& what, double std_slack, const std::vector<double>& lf_slacks) {
            const double sum = std::accumulate(lf_slacks.begin(), lf_slacks.end(), 0.0);
            tally.expect(std::abs(std_slack - sum) <= 1e-6 * std::max(1.0, std::abs(sum)),
                         what + ": slack " + num(std_slack) + " vs sum " + num(sum));
            const bool all_hold = std::all_of(lf_slacks.begin(), lf_slacks.end(), [](double s) { return s >= -1e-9; });
            if (all_hold) tally.expect(std_slack >= -1e-6, what + ": implication fails");
            ++transfers;
        };

        for (int c = 0; c < 50; ++c) {
            // Single level: facility i with one S, retailers of i at level b(i).
            const int i = static_cast<int>(rng.uniform_int(0, in.num_facilities() - 1));
            const int l = static_cast<int>(rng.uniform_int(0, T - 1));
            const std::uint64_t s = mask(0, l);
            const int b = level_of(in.facility_id(i).kind);
            std::vector<double> parts3;
            for (int r : in.descendant_retailers(i))
                parts3.push_back(eval_inequality(make_single_level_3lf(in, r, b, l, s), p3));
            transfer("single-level", eval_inequality(make_single_level_std(in, i, l, s), ps), parts3);
        }
        for (int c = 0; c < 50; ++c) {
            // Two level: owner segment shared, successor j's S^j used by the retailers below j.
            const int i = static_cast<int>(rng.uniform_int(0, in.num_warehouses));
            const int bi = level_of(in.facility_id(i).kind);
            const int bp = i == 0 ? static_cast<int>(rng.uniform_int(1, 2)) : 2;
            const int l = static_cast<int>(rng.uniform_int(1, T - 1));
            const int split = static_cast<int>(rng.uniform_int(0, l - 1));
            const std::uint64_t own = mask(0, split);
            const std::vector<int> succ = in.successors_at_level(i, bp);
            std::vector<std::uint64_t> sm;
            for (std::size_t j = 0; j < succ.size(); ++j) sm.push_back(mask(split + 1, l));
            std::vector<double> parts3;
            for (int r : in.descendant_retailers(i)) {
                const int pj = in.predecessor_at_level(r, bp);
                const auto pos = std::find(succ.begin(), succ.end(), pj) - succ.begin();
                parts3.push_back(eval_inequality(make_two_level_3lf(in, r, bi, bp, l, split, own, sm[pos]), p3));
            }
            transfer("two-level", eval_inequality(make_two_level_std(in, i, bp, l, split, own, sm), ps), parts3);
        }
        for (int c = 0; c < 50; ++c) {
            // Three level: plant S^p, the retailer's warehouse S^w and its own S^r.
            const int l = static_cast<int>(rng.uniform_int(2, T - 1));
            const int lp = static_cast<int>(rng.uniform_int(0, l - 2));
            const int lw = static_cast<int>(rng.uniform_int(lp + 1, l - 1));
            const std::uint64_t pm = mask(0, lp);
            std::vector<std::uint64_t> wm, rm;
            for (int w = 0; w < in.num_warehouses; ++w) wm.push_back(mask(lp + 1, lw));
            for (int r = 0; r < in.num_retailers; ++r) rm.push_back(mask(lw + 1, l));
            std::vector<double> parts3;
            for (int r = 0; r < in.num_retailers; ++r)
                parts3.push_back(eval_inequality(
                    make_three_level_3lf(in, r, l, lp, lw, pm, wm[in.retailer_warehouse[r]], rm[r]), p3));
            transfer("three-level", eval_inequality(make_three_level_std(in, l, lp, lw, pm, wm, rm), ps), parts3);
        }
    }
    return tally.outcome("200 fractional 3LF points, rows and objective at 1e-6, " + std::to_string(transfers) +
                         " inequality transfers");
}

Outcome preprocessing_safety() {
    Rng rng(707);
    testing::TinyOptions opt;
    opt.max_retailer_setup = 10;
    Tally tally;
    long long removed = 0;
    for (int n = 0; n < 100; ++n) {
        const Instance in = n % 2 == 0 ? testing::random_tiny_instance(rng, opt) : testing::generated_tiny_instance(rng);
        const RemovalSet rem = compute_removals(in);
        OracleConfig restricted = wide_oracle();
        for (const RemovalSet::Triple& t : rem.triples()) restricted.forbidden.insert({t.retailer, t.k, t.t});
        removed += rem.np();
        const double a = solve_exact(in, restricted).cost, b = solve_exact(in, wide_oracle()).cost;
        tally.expect(a == b, "instance " + std::to_string(n) + ": restricted " + num(a) + " vs " + num(b));
        const std::int64_t recount = testing::recount_removals(in);
        const std::int64_t pot = static_cast<std::int64_t>(in.num_retailers) * in.num_periods * (in.num_periods - 1) / 2;
        tally.expect(rem.np() == recount, "instance " + std::to_string(n) + ": np differs from recount");
        tally.expect(rem.pot() == pot, "instance " + std::to_string(n) + ": pot");
        const double red = pot == 0 ? 0.0 : 100.0 * static_cast<double>(recount) / static_cast<double>(pot);
        tally.expect(std::abs(rem.red() - red) <= 1e-9, "instance " + std::to_string(n) + ": red");
    }
    return tally.outcome("100 instances, " + std::to_string(removed) + " variables removed, optimum unchanged");
}

Outcome determinism() {
    Tally tally;
    int specs = 0;
    for (int shape = 0; shape < 2; ++shape)
        for (std::uint64_t seed : {1ULL, 2ULL, 99ULL})
            for (const auto& [R, T, W] : {std::tuple{50, 15, 5}, std::tuple{10, 4, 3}}) {
                InstanceSpec spec;
                spec.num_retailers = R;
                spec.num_periods = T;
                spec.num_warehouses = W;
                spec.network_shape = shape ? NetworkShape::Unbalanced : NetworkShape::Balanced;
                spec.demand_type = seed % 2 ? VariationType::Dynamic : VariationType::Static;
                spec.seed = seed;
                tally.expect(write_instance(generate(spec)) == write_instance(generate(spec)),
                             "instance text differs for " + group_name(spec));
                ++specs;
            }

    Rng rng(808);
    int runs = 0;
    std::vector<Instance> cases;
    for (int n = 0; n < 8; ++n) cases.push_back(testing::generated_tiny_instance(rng, 3, 8, 6));
    InstanceSpec big;
    big.seed = 5;
    cases.push_back(generate(big));
    for (const Instance& in : cases) {
        HeuristicConfig cfg{0.2, 500, 7, false};
        const HeuristicResult a = run_serial(in, cfg);
        const HeuristicResult b = run_parallel(in, cfg);
        tally.expect(a.best_cost == b.best_cost && a.best_iteration == b.best_iteration &&
                         a.per_iteration_costs == b.per_iteration_costs && a.iteration_seeds == b.iteration_seeds,
                     "heuristic serial/parallel differ");
        ++runs;
    }
    for (int n = 0; n < 10; ++n) {
        const Instance in = testing::generated_tiny_instance(rng);
        OracleConfig par = wide_oracle();
        par.parallel = true;
        const OracleResult a = solve_exact(in, wide_oracle()), b = solve_exact(in, par);
        tally.expect(a.cost == b.cost && a.routes == b.routes, "oracle serial/parallel differ");
    }
    return tally.outcome(std::to_string(specs) + " specs byte-identical; " + std::to_string(runs) +
                         " heuristic runs and 10 oracle runs identical serial vs parallel");
}

/// Retailer counts per warehouse, recomputed from the stated rules.
std::vector<int> expected_counts(int R, int W, NetworkShape shape) {
    std::vector<int> c(W, 0);
    if (shape == NetworkShape::Balanced) {
        for (int w = 0; w < W; ++w) c[w] = R / W + (w < R % W ? 1 : 0);
        return c;
    }
    const int heavy = static_cast<int>(std::ceil(0.2 * W - 1e-12));
    auto spread = [&c](int count, int from, int to) {
        for (int w = from; w < to; ++w) c[w] = count / (to - from);
        c[from] += count % (to - from);
    };
    if (heavy >= W) {
        spread(R, 0, W);
        return c;
    }
    const int concentrated = static_cast<int>(std::floor(0.8 * R + 1e-12));
    spread(concentrated, 0, heavy);
    spread(R - concentrated, heavy, W);
    return c;
}

Outcome generator_fidelity() {
    Tally tally;
    const std::tuple<int, int, int> shapes[] = {{50, 15, 5},  {50, 15, 10}, {100, 15, 10}, {100, 30, 20}, {200, 15, 20},
                                                {7, 3, 2},    {13, 5, 4},   {9, 4, 9},     {31, 6, 6},    {64, 8, 11}};
    int checked = 0;
    for (const auto& [R, T, W] : shapes)
        for (NetworkShape shape : {NetworkShape::Balanced, NetworkShape::Unbalanced}) {
            InstanceSpec spec;
            spec.num_retailers = R;
            spec.num_periods = T;
            spec.num_warehouses = W;
            spec.network_shape = shape;
            spec.demand_type = checked % 2 ? VariationType::Static : VariationType::Dynamic;
            spec.fixed_cost_type = checked % 3 ? VariationType::Dynamic : VariationType::Static;
            spec.seed = 1000 + checked++;
            const Instance in = generate(spec);
            const std::string g = group_name(spec);
            std::vector<int> counts(W, 0);
            for (int w : in.retailer_warehouse) ++counts[w];
            tally.expect(counts == expected_counts(R, W, shape), g + ": retailer counts");
            for (int r = 0; r < R; ++r)
                for (int t = 0; t < T; ++t) {
                    tally.expect(in.demand(r, t) >= 5 && in.demand(r, t) <= 100, g + ": demand");
                    if (spec.demand_type == VariationType::Static)
                        tally.expect(in.demand(r, t) == in.demand(r, 0), g + ": static demand varies");
                }
            for (int i = 0; i < in.num_facilities(); ++i) {
                const double lo = i == 0 ? 30000 : (i <= W ? 1500 : 5);
                const double hi = i == 0 ? 45000 : (i <= W ? 4500 : 100);
                for (int t = 0; t < T; ++t) {
                    const double sc = in.setup_cost(i, t), hc = in.holding_cost(i, t);
                    tally.expect(sc >= lo && sc <= hi && sc == std::floor(sc), g + ": setup cost");
                    if (spec.fixed_cost_type == VariationType::Static)
                        tally.expect(sc == in.setup_cost(i, 0), g + ": static setup varies");
                    if (i == 0) tally.expect(hc == 0.25, g + ": plant holding");
                    else if (i <= W) tally.expect(hc == 0.5, g + ": warehouse holding");
                    else tally.expect(hc >= 0.5 && hc < 1.0 && hc == in.holding_cost(i, 0), g + ": retailer holding");
                }
            }
        }
    return tally.outcome(std::to_string(checked) + " shapes, value bounds and assignment counts");
}

Outcome external_solver() {
    const char* cmd = std::getenv("LOTFORGE_LP_SOLVER_CMD");
    if (!cmd || !*cmd) return {Outcome::Skip, "LOTFORGE_LP_SOLVER_CMD not set"};
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "lotforge_acceptance_external";
    fs::remove_all(dir);
    fs::create_directories(dir);
    Tally tally;
    Rng rng(909);
    int solved = 0;
    for (int n = 0; n < 5; ++n) {
        const Instance in = testing::generated_tiny_instance(rng, 2, 3, 3);
        const double opt = solve_exact(in, wide_oracle()).cost;

        const fs::path lp = dir / ("mc" + std::to_string(n) + ".lp"), sol = dir / ("mc" + std::to_string(n) + ".sol");
        std::ofstream(lp) << export_lp(build_mc(in));
        std::string c = cmd;
        for (auto [key, val] : {std::pair{std::string("{lp}"), lp.string()}, std::pair{std::string("{sol}"), sol.string()}})
            for (std::size_t at = 0; (at = c.find(key, at)) != std::string::npos; at += val.size()) c.replace(at, key.size(), val);
        if (std::system(c.c_str()) != 0) {
            tally.fail("solver failed on MC model " + std::to_string(n));
            continue;
        }
        std::ifstream in_sol(sol);
        std::stringstream buf;
        buf << in_sol.rdbuf();
        std::optional<double> obj;
        parse_point_text(buf.str(), &obj);
        tally.expect(obj && close_rel(*obj, opt, 1e-6),
                     "MC optimum " + (obj ? num(*obj) : std::string("missing")) + " vs oracle " + num(opt));

        CutConfig cfg;
        cfg.violation_tol = 1e-4;
        cfg.max_rounds = 6;
        cfg.two_level_every = 2;
        cfg.three_level_every = 3;
        const CutLoopResult loop =
            cutting_plane_loop(in, build_std(in), command_source(cmd, (dir / ("std" + std::to_string(n))).string()), cfg);
        tally.expect(loop.rounds >= 1, "cut loop got no LP solution");
        for (std::size_t r = 1; r < loop.round_objectives.size(); ++r) {
            const auto& a = loop.round_objectives[r - 1];
            const auto& b = loop.round_objectives[r];
            tally.expect(a && b && *b >= *a - 1e-6 * std::max(1.0, std::abs(*a)), "LP bound decreased between rounds");
        }
        for (const auto& o : loop.round_objectives) tally.expect(o && *o <= opt * (1 + 1e-6), "LP bound above optimum");
        ++solved;
    }
    fs::remove_all(dir);
    return tally.outcome(std::to_string(solved) + " MC models match the oracle; STD LP bound nondecreasing per round");
}

struct Criterion {
    std::string name;
    std::string title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {"dp", "DP exactness", dp_exactness},
        {"oracle", "Oracle self-consistency", oracle_consistency},
        {"heuristic", "Heuristic soundness", heuristic_soundness},
        {"validity", "Inequality validity", inequality_validity},
        {"separation", "Separation exactness", separation_exactness},
        {"mapping", "3LF to STD mapping", mapping_suite},
        {"preprocess", "Preprocessing safety", preprocessing_safety},
        {"determinism", "Determinism", determinism},
        {"generator", "Generator fidelity", generator_fidelity},
        {"external", "External solver", external_solver},
    };
    std::string only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            only = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--only <name>]\n";
            return 2;
        }
    }
    int failed = 0, ran = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && c.name != only) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {Outcome::Fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char* tag = o.kind == Outcome::Pass ? "PASS" : o.kind == Outcome::Fail ? "FAIL" : "SKIP";
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << secs;
        std::cout << tag << "  " << c.title << ": " << o.detail << " (" << t.str() << " s)" << std::endl;
        if (o.kind == Outcome::Fail) ++failed;
    }
    if (ran == 0) {
        std::cerr << "no criterion named '" << only << "'\n";
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
