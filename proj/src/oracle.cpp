#include "lotforge/oracle.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace lotforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Choice {
    double cost = kInf;
    int k0 = -1;
    int k1 = -1;
    int k2 = -1;
};

bool better(const Choice& a, const Choice& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return std::tie(a.k0, a.k1, a.k2) < std::tie(b.k0, b.k1, b.k2);
}

class Enumerator {
public:
    Enumerator(const Instance& in, const OracleConfig& config)
        : in_(in), T_(in.num_periods), allowed_(static_cast<std::size_t>(in.num_retailers) * T_ * T_, 1) {
        for (const auto& [r, k2, t] : config.forbidden)
            if (r >= 0 && r < in.num_retailers && k2 >= 0 && k2 < T_ && t >= 0 && t < T_) allowed_[idx3(r, k2, t)] = 0;
        unit_.assign(static_cast<std::size_t>(in.num_retailers) * T_ * T_ * T_ * T_, kInf);
        for (int r = 0; r < in.num_retailers; ++r)
            for (int t = 0; t < T_; ++t)
                for (int k2 = 0; k2 <= t; ++k2)
                    for (int k1 = 0; k1 <= k2; ++k1)
                        for (int k0 = 0; k0 <= k1; ++k0)
                            unit_[idx5(r, k0, k1, k2, t)] = route_unit_cost(in, {r, t, k0, k1, k2});
    }

    int upper_bits() const { return (1 + in_.num_warehouses) * T_; }

    bool open(std::uint64_t upper, int flat, int t) const { return (upper >> (flat * T_ + t)) & 1U; }

    /// Cost of the best completion of a plant/warehouse pattern. When `routes`
    /// is given, the chosen routes are appended to it.
    double evaluate(std::uint64_t upper, RouteAssignment* routes) const {
        double total = 0.0;
        for (int f = 0; f <= in_.num_warehouses; ++f)
            for (int t = 0; t < T_; ++t)
                if (open(upper, f, t)) total += in_.setup_cost(f, t);

        std::vector<Choice> best(static_cast<std::size_t>(T_) * T_);
        std::vector<Choice> pick(T_);
        std::vector<Choice> best_pick(T_);
        for (int r = 0; r < in_.num_retailers; ++r) {
            const int fw = in_.predecessor_at_level(r, 1);
            const int fr = in_.retailer(r);
            // Cheapest upstream (k0, k1) for each retailer shipment period k2 and demand t.
            for (int t = 0; t < T_; ++t)
                for (int k2 = 0; k2 <= t; ++k2) {
                    Choice c;
                    for (int k0 = 0; k0 <= k2; ++k0) {
                        if (!open(upper, Instance::plant(), k0)) continue;
                        for (int k1 = k0; k1 <= k2; ++k1) {
                            if (!open(upper, fw, k1)) continue;
                            const Choice cand{unit_[idx5(r, k0, k1, k2, t)], k0, k1, k2};
                            if (better(cand, c)) c = cand;
                        }
                    }
                    best[static_cast<std::size_t>(k2) * T_ + t] = c;
                }

            double best_cost = kInf;
            for (std::uint64_t q = 0; q < (std::uint64_t{1} << T_); ++q) {
                double cost = 0.0;
                for (int t = 0; t < T_; ++t)
                    if ((q >> t) & 1U) cost += in_.setup_cost(fr, t);
                for (int t = 0; t < T_ && cost < kInf; ++t) {
                    const std::int64_t d = in_.demand(r, t);
                    if (d == 0) continue;
                    Choice c;
                    for (int k2 = 0; k2 <= t; ++k2) {
                        if (!((q >> k2) & 1U) || !allowed_[idx3(r, k2, t)]) continue;
                        const Choice& cand = best[static_cast<std::size_t>(k2) * T_ + t];
                        if (cand.cost < kInf && better(cand, c)) c = cand;
                    }
                    pick[t] = c;
                    cost += static_cast<double>(d) * c.cost;
                }
                if (cost < best_cost) {
                    best_cost = cost;
                    if (routes) best_pick = pick;
                }
            }
            total += best_cost;
            if (total == kInf) return kInf;
            if (routes)
                for (int t = 0; t < T_; ++t)
                    if (in_.demand(r, t) != 0) {
                        const Choice& c = best_pick[t];
                        routes->push_back({r, t, c.k0, c.k1, c.k2});
                    }
        }
        return total;
    }

private:
    std::size_t idx3(int r, int k2, int t) const {
        return (static_cast<std::size_t>(r) * T_ + k2) * T_ + t;
    }
    std::size_t idx5(int r, int k0, int k1, int k2, int t) const {
        return (((static_cast<std::size_t>(r) * T_ + k0) * T_ + k1) * T_ + k2) * T_ + t;
    }

    const Instance& in_;
    int T_;
    std::vector<std::uint8_t> allowed_;
    std::vector<double> unit_;
};

struct Best {
    double cost = kInf;
    std::uint64_t pattern = 0;

    void offer(double c, std::uint64_t p) {
        if (c < cost || (c == cost && p < pattern)) {
            cost = c;
            pattern = p;
        }
    }
};

}  // namespace

OracleResult solve_exact(const Instance& in, const OracleConfig& config) {
    require_valid(in);
    const long long bits = static_cast<long long>(in.num_facilities()) * in.num_periods;
    if (bits > config.max_setup_bits)
        throw SizeGuardError("oracle: " + std::to_string(bits) + " setup variables exceed the guard of " +
                             std::to_string(config.max_setup_bits));

    const Enumerator e(in, config);
    if (e.upper_bits() > 62) throw SizeGuardError("oracle: too many plant and warehouse setup variables");
    const std::int64_t n = std::int64_t{1} << e.upper_bits();

    Best best;
    if (config.parallel) {
#pragma omp parallel
        {
            Best local;
#pragma omp for schedule(dynamic, 16) nowait
            for (std::int64_t u = 0; u < n; ++u)
                local.offer(e.evaluate(static_cast<std::uint64_t>(u), nullptr), static_cast<std::uint64_t>(u));
#pragma omp critical
            best.offer(local.cost, local.pattern);
        }
    } else {
        for (std::int64_t u = 0; u < n; ++u)
            best.offer(e.evaluate(static_cast<std::uint64_t>(u), nullptr), static_cast<std::uint64_t>(u));
    }
    if (best.cost == kInf) throw std::invalid_argument("oracle: forbidden routes leave a demand unservable");

    OracleResult res;
    res.cost = e.evaluate(best.pattern, &res.routes);
    res.solution = from_routes(in, res.routes);
    res.solution.cost = res.cost;
    return res;
}

}  // namespace lotforge
