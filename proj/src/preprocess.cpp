#include "lotforge/preprocess.hpp"

#include <stdexcept>

#include "lotforge/number_format.hpp"

namespace lotforge {

RemovalSet::RemovalSet(int num_retailers, int num_periods)
    : t_min_(static_cast<std::size_t>(num_retailers), static_cast<std::size_t>(num_periods), -1) {}

void RemovalSet::set_t_min(int r, int k, int t) {
    if (t >= 0 && (t <= k || t >= num_periods()))
        throw std::out_of_range("RemovalSet: t_min must lie in (k, T)");
    t_min_(r, k) = t;
}

std::int64_t RemovalSet::np() const {
    std::int64_t n = 0;
    for (int r = 0; r < num_retailers(); ++r)
        for (int k = 0; k < num_periods(); ++k)
            if (t_min_(r, k) >= 0) n += num_periods() - t_min_(r, k);
    return n;
}

std::int64_t RemovalSet::pot() const {
    const std::int64_t t = num_periods();
    return static_cast<std::int64_t>(num_retailers()) * t * (t - 1) / 2;
}

double RemovalSet::red() const {
    const std::int64_t p = pot();
    return p == 0 ? 0.0 : 100.0 * static_cast<double>(np()) / static_cast<double>(p);
}

std::vector<RemovalSet::Triple> RemovalSet::triples() const {
    std::vector<Triple> out;
    for (int r = 0; r < num_retailers(); ++r)
        for (int k = 0; k < num_periods(); ++k)
            if (const int m = t_min_(r, k); m >= 0)
                for (int t = m; t < num_periods(); ++t) out.push_back({r, k, t});
    return out;
}

RemovalSet compute_removals(const Instance& in) {
    require_valid(in);
    const int T = in.num_periods;
    RemovalSet set(in.num_retailers, T);
    for (int r = 0; r < in.num_retailers; ++r) {
        const int fr = in.retailer(r);
        const int fw = in.predecessor_at_level(r, 1);
        for (int k = 0; k < T; ++k) {
            double hr = 0.0, hw = 0.0;
            for (int t = k + 1; t < T; ++t) {
                hr += in.holding_cost(fr, t - 1);
                hw += in.holding_cost(fw, t - 1);
                const double d = static_cast<double>(in.demand(r, t));
                if (d * hr >= d * hw + in.setup_cost(fr, t)) {
                    set.set_t_min(r, k, t);
                    break;
                }
            }
        }
    }
    return set;
}

MipModel apply_removals(const MipModel& mc_model, const RemovalSet& removals) {
    if (mc_model.kind != FormulationKind::Mc) throw std::invalid_argument("apply_removals: model is not MC");
    if (mc_model.num_retailers != removals.num_retailers() || mc_model.num_periods != removals.num_periods())
        throw std::invalid_argument("apply_removals: dimensions differ from the removal set");
    MipModel out = mc_model;
    for (const RemovalSet::Triple& tr : removals.triples()) {
        const VarId id = VarId::w(2, tr.retailer, tr.k, tr.t);
        if (!out.has_variable(id)) throw std::invalid_argument("apply_removals: missing " + var_name(id));
        out.variable(id).ub = 0.0;
    }
    return out;
}

std::string removal_report_csv(const RemovalSet& removals) {
    std::string out = "retailer,k,t_min\n";
    for (int r = 0; r < removals.num_retailers(); ++r)
        for (int k = 0; k < removals.num_periods(); ++k)
            if (const int m = removals.t_min(r, k); m >= 0)
                out += std::to_string(r) + ',' + std::to_string(k + 1) + ',' + std::to_string(m + 1) + '\n';
    out += "np,pot,red\n";
    out += std::to_string(removals.np()) + ',' + std::to_string(removals.pot()) + ',' + format_double(removals.red()) +
           '\n';
    return out;
}

}  // namespace lotforge
