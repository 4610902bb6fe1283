#include "lotforge/solution.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "lotforge/number_format.hpp"

namespace lotforge {

Solution Solution::zeros(const Instance& in) {
    const auto F = static_cast<std::size_t>(in.num_facilities());
    const auto T = static_cast<std::size_t>(in.num_periods);
    return Solution{Matrix<double>(F, T, 0.0), Matrix<std::uint8_t>(F, T, 0), Matrix<double>(F, T, 0.0), 0.0};
}

namespace {

std::string where(const Instance& in, int i, int t) {
    return facility_name(in.facility_id(i)) + " period " + std::to_string(t + 1);
}

}  // namespace

std::vector<std::string> check_feasible(const Instance& in, const Solution& sol, double tol) {
    const auto F = static_cast<std::size_t>(in.num_facilities());
    const auto T = static_cast<std::size_t>(in.num_periods);
    auto dims_ok = [&](std::size_t r, std::size_t c) { return r == F && c == T; };
    if (!dims_ok(sol.x.rows(), sol.x.cols()) || !dims_ok(sol.y.rows(), sol.y.cols()) ||
        !dims_ok(sol.s.rows(), sol.s.cols()))
        throw std::invalid_argument("check_feasible: solution dimensions do not match the instance");

    const CumulativeDemand cd(in);
    std::vector<std::string> v;
    const int nT = in.num_periods;

    for (int i = 0; i < in.num_facilities(); ++i) {
        const std::vector<int> children = in.successors(i);
        const bool is_retailer = in.facility_id(i).kind == FacilityKind::Retailer;
        for (int t = 0; t < nT; ++t) {
            const double x = sol.x(i, t);
            const double s = sol.s(i, t);
            if (x < -tol) v.push_back("negative production/shipment at " + where(in, i, t));
            if (s < -tol) v.push_back("negative stock at " + where(in, i, t));
            if (sol.y(i, t) > 1) v.push_back("non-binary setup at " + where(in, i, t));

            const double before = t > 0 ? sol.s(i, t - 1) : 0.0;
            double out = s;
            if (is_retailer) {
                out += static_cast<double>(in.demand(in.facility_id(i).index, t));
            } else {
                for (int j : children) out += sol.x(j, t);
            }
            if (std::abs(before + x - out) > tol)
                v.push_back("flow balance violated at " + where(in, i, t) + " (residual " +
                            format_double(before + x - out) + ")");

            const double cap = static_cast<double>(cd.remaining(i, t)) * (sol.y(i, t) ? 1.0 : 0.0);
            if (x > cap + tol) v.push_back("setup enforcement violated at " + where(in, i, t));
        }
        if (sol.s(i, nT - 1) > tol) v.push_back("nonzero final stock at " + facility_name(in.facility_id(i)));
    }
    return v;
}

double evaluate_cost(const Instance& in, const Solution& sol) {
    double cost = 0.0;
    for (int t = 0; t < in.num_periods; ++t)
        for (int i = 0; i < in.num_facilities(); ++i) {
            if (sol.y(i, t)) cost += in.setup_cost(i, t);
            cost += in.holding_cost(i, t) * sol.s(i, t);
        }
    return cost;
}

double route_unit_cost(const Instance& in, const Route& rt) {
    const int w = in.warehouse(in.retailer_warehouse[rt.retailer]);
    const int r = in.retailer(rt.retailer);
    double c = 0.0;
    for (int u = rt.k0; u < rt.k1; ++u) c += in.holding_cost(Instance::plant(), u);
    for (int u = rt.k1; u < rt.k2; ++u) c += in.holding_cost(w, u);
    for (int u = rt.k2; u < rt.period; ++u) c += in.holding_cost(r, u);
    return c;
}

Solution from_routes(const Instance& in, const RouteAssignment& routes) {
    Solution sol = Solution::zeros(in);
    std::set<std::pair<int, int>> seen;
    for (const Route& rt : routes) {
        if (rt.retailer < 0 || rt.retailer >= in.num_retailers || rt.period < 0 || rt.period >= in.num_periods)
            throw std::invalid_argument("from_routes: route index out of range");
        if (!(0 <= rt.k0 && rt.k0 <= rt.k1 && rt.k1 <= rt.k2 && rt.k2 <= rt.period))
            throw std::invalid_argument("from_routes: route periods must satisfy k0 <= k1 <= k2 <= t (retailer " +
                                        std::to_string(rt.retailer) + ", period " +
                                        std::to_string(rt.period + 1) + ")");
        if (!seen.insert({rt.retailer, rt.period}).second)
            throw std::invalid_argument("from_routes: demand routed twice");

        const double d = static_cast<double>(in.demand(rt.retailer, rt.period));
        if (d == 0.0) continue;
        const int p = Instance::plant();
        const int w = in.warehouse(in.retailer_warehouse[rt.retailer]);
        const int r = in.retailer(rt.retailer);

        sol.x(p, rt.k0) += d;
        sol.y(p, rt.k0) = 1;
        for (int u = rt.k0; u < rt.k1; ++u) sol.s(p, u) += d;
        sol.x(w, rt.k1) += d;
        sol.y(w, rt.k1) = 1;
        for (int u = rt.k1; u < rt.k2; ++u) sol.s(w, u) += d;
        sol.x(r, rt.k2) += d;
        sol.y(r, rt.k2) = 1;
        for (int u = rt.k2; u < rt.period; ++u) sol.s(r, u) += d;
    }
    for (int r = 0; r < in.num_retailers; ++r)
        for (int t = 0; t < in.num_periods; ++t)
            if (in.demand(r, t) > 0 && !seen.count({r, t}))
                throw std::invalid_argument("from_routes: demand of retailer " + std::to_string(r) +
                                            " in period " + std::to_string(t + 1) + " has no route");
    sol.cost = evaluate_cost(in, sol);
    return sol;
}

std::string solution_to_csv(const Instance& in, const Solution& sol) {
    std::string out = "facility,period,x,y,s\n";
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int t = 0; t < in.num_periods; ++t) {
            out += facility_name(in.facility_id(i));
            out += ',' + std::to_string(t + 1) + ',' + format_double(sol.x(i, t)) + ',' +
                   std::to_string(static_cast<int>(sol.y(i, t))) + ',' + format_double(sol.s(i, t)) + '\n';
        }
    out += "cost," + format_double(sol.cost) + '\n';
    return out;
}

}  // namespace lotforge
