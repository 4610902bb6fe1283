#include "lotforge/formulations.hpp"

#include <stdexcept>

namespace lotforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void stamp_dimensions(MipModel& m, const Instance& in, FormulationKind kind) {
    m.kind = kind;
    m.num_periods = in.num_periods;
    m.num_warehouses = in.num_warehouses;
    m.num_retailers = in.num_retailers;
}

void add_setup_variables(MipModel& m, const Instance& in) {
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int k = 0; k < in.num_periods; ++k)
            m.add_variable({VarId::y(in.facility_id(i), k), 0.0, 1.0, true});
}

std::string suffix_t(int k) { return "_t" + std::to_string(k + 1); }
std::string retailer_tag(int r) { return "_r" + std::to_string(r); }

}  // namespace

MipModel build_std(const Instance& in) {
    require_valid(in);
    const CumulativeDemand cd(in);
    const int T = in.num_periods;
    MipModel m;
    stamp_dimensions(m, in, FormulationKind::Std);

    for (int i = 0; i < in.num_facilities(); ++i) {
        const FacilityId f = in.facility_id(i);
        for (int k = 0; k < T; ++k) m.add_variable({VarId::x(f, k), 0.0, static_cast<double>(cd.remaining(i, k)), false});
        for (int k = 0; k < T; ++k) m.add_variable({VarId::s(f, k), 0.0, kInf, false});
    }
    add_setup_variables(m, in);

    LinearExpr obj;
    for (int i = 0; i < in.num_facilities(); ++i) {
        const FacilityId f = in.facility_id(i);
        for (int k = 0; k < T; ++k) {
            obj.push_back({VarId::y(f, k), in.setup_cost(i, k)});
            obj.push_back({VarId::s(f, k), in.holding_cost(i, k)});
        }
    }
    m.set_objective(std::move(obj));

    for (int i = 0; i < in.num_facilities(); ++i) {
        const FacilityId f = in.facility_id(i);
        const std::vector<int> children = in.successors(i);
        for (int t = 0; t < T; ++t) {
            // s_{t-1} + x_t - outflow - s_t = rhs
            LinearExpr e;
            if (t > 0) e.push_back({VarId::s(f, t - 1), 1.0});
            e.push_back({VarId::x(f, t), 1.0});
            double rhs = 0.0;
            if (f.kind == FacilityKind::Retailer) {
                rhs = static_cast<double>(in.demand(f.index, t));
            } else {
                for (int j : children) e.push_back({VarId::x(in.facility_id(j), t), -1.0});
            }
            e.push_back({VarId::s(f, t), -1.0});
            m.add_constraint({"bal_" + facility_name(f) + suffix_t(t), std::move(e), Sense::Eq, rhs});
        }
        for (int t = 0; t < T; ++t) {
            LinearExpr e{{VarId::x(f, t), 1.0}, {VarId::y(f, t), -static_cast<double>(cd.remaining(i, t))}};
            m.add_constraint({"setup_" + facility_name(f) + suffix_t(t), std::move(e), Sense::Le, 0.0});
        }
    }
    return m;
}

MipModel build_mc(const Instance& in) {
    require_valid(in);
    const int T = in.num_periods;
    MipModel m;
    stamp_dimensions(m, in, FormulationKind::Mc);

    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int k = 0; k < T; ++k)
                for (int t = k; t < T; ++t)
                    m.add_variable({VarId::w(b, r, k, t), 0.0, static_cast<double>(in.demand(r, t)), false});
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int k = 0; k < T; ++k)
                for (int t = k + 1; t < T; ++t) m.add_variable({VarId::sig(b, r, k, t), 0.0, kInf, false});
    add_setup_variables(m, in);

    LinearExpr obj;
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int k = 0; k < T; ++k) obj.push_back({VarId::y(in.facility_id(i), k), in.setup_cost(i, k)});
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r) {
            const int holder = in.predecessor_at_level(r, b);
            for (int k = 0; k < T; ++k)
                for (int t = k + 1; t < T; ++t) obj.push_back({VarId::sig(b, r, k, t), in.holding_cost(holder, k)});
        }
    m.set_objective(std::move(obj));

    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int k = 0; k < T; ++k)
                for (int t = k; t < T; ++t) {
                    // sig_{k-1,t} + w^b_{kt} = outflow + (1 - lambda_{kt}) sig_{kt}
                    LinearExpr e;
                    if (k > 0) e.push_back({VarId::sig(b, r, k - 1, t), 1.0});
                    e.push_back({VarId::w(b, r, k, t), 1.0});
                    double rhs = 0.0;
                    if (b < 2) {
                        e.push_back({VarId::w(b + 1, r, k, t), -1.0});
                    } else if (k == t) {
                        rhs = static_cast<double>(in.demand(r, t));
                    }
                    if (k < t) e.push_back({VarId::sig(b, r, k, t), -1.0});
                    m.add_constraint({"bal" + std::to_string(b) + retailer_tag(r) + "_k" + std::to_string(k + 1) +
                                          suffix_t(t),
                                      std::move(e), Sense::Eq, rhs});
                }
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r) {
            const FacilityId holder = in.facility_id(in.predecessor_at_level(r, b));
            for (int k = 0; k < T; ++k)
                for (int t = k; t < T; ++t) {
                    LinearExpr e{{VarId::w(b, r, k, t), 1.0},
                                 {VarId::y(holder, k), -static_cast<double>(in.demand(r, t))}};
                    m.add_constraint({"setup" + std::to_string(b) + retailer_tag(r) + "_k" + std::to_string(k + 1) +
                                          suffix_t(t),
                                      std::move(e), Sense::Le, 0.0});
                }
        }
    return m;
}

MipModel build_3lf(const Instance& in) {
    require_valid(in);
    const CumulativeDemand cd(in);
    const int T = in.num_periods;
    MipModel m;
    stamp_dimensions(m, in, FormulationKind::ThreeLevel);

    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r) {
            const int ri = in.retailer(r);
            for (int k = 0; k < T; ++k)
                m.add_variable({VarId::x3(b, r, k), 0.0, static_cast<double>(cd.remaining(ri, k)), false});
            for (int k = 0; k < T; ++k) m.add_variable({VarId::s3(b, r, k), 0.0, kInf, false});
        }
    add_setup_variables(m, in);

    LinearExpr obj;
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int k = 0; k < T; ++k) obj.push_back({VarId::y(in.facility_id(i), k), in.setup_cost(i, k)});
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r) {
            const int holder = in.predecessor_at_level(r, b);
            for (int k = 0; k < T; ++k) obj.push_back({VarId::s3(b, r, k), in.holding_cost(holder, k)});
        }
    m.set_objective(std::move(obj));

    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int t = 0; t < T; ++t) {
                LinearExpr e;
                if (t > 0) e.push_back({VarId::s3(b, r, t - 1), 1.0});
                e.push_back({VarId::x3(b, r, t), 1.0});
                double rhs = 0.0;
                if (b < 2)
                    e.push_back({VarId::x3(b + 1, r, t), -1.0});
                else
                    rhs = static_cast<double>(in.demand(r, t));
                e.push_back({VarId::s3(b, r, t), -1.0});
                m.add_constraint({"bal" + std::to_string(b) + retailer_tag(r) + suffix_t(t), std::move(e), Sense::Eq, rhs});
            }
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r) {
            const int ri = in.retailer(r);
            const FacilityId holder = in.facility_id(in.predecessor_at_level(r, b));
            for (int t = 0; t < T; ++t) {
                LinearExpr e{{VarId::x3(b, r, t), 1.0}, {VarId::y(holder, t), -static_cast<double>(cd.remaining(ri, t))}};
                m.add_constraint({"setup" + std::to_string(b) + retailer_tag(r) + suffix_t(t), std::move(e), Sense::Le, 0.0});
            }
        }
    return m;
}

VarValueMap map_3lf_to_std(const Instance& in, const VarValueMap& point) {
    auto value = [&point](const VarId& id) {
        const auto it = point.find(id);
        if (it == point.end()) throw std::out_of_range("map_3lf_to_std: no value for " + var_name(id));
        return it->second;
    };
    VarValueMap out;
    for (int i = 0; i < in.num_facilities(); ++i) {
        const FacilityId f = in.facility_id(i);
        const int b = level_of(f.kind);
        const std::vector<int> rs = in.descendant_retailers(i);
        for (int k = 0; k < in.num_periods; ++k) {
            double x = 0.0, s = 0.0;
            for (int r : rs) {
                x += value(VarId::x3(b, r, k));
                s += value(VarId::s3(b, r, k));
            }
            out[VarId::x(f, k)] = x;
            out[VarId::s(f, k)] = s;
            out[VarId::y(f, k)] = value(VarId::y(f, k));
        }
    }
    return out;
}

VarValueMap std_point(const Instance& in, const Solution& sol) {
    VarValueMap out;
    for (int i = 0; i < in.num_facilities(); ++i) {
        const FacilityId f = in.facility_id(i);
        for (int k = 0; k < in.num_periods; ++k) {
            out[VarId::x(f, k)] = sol.x(i, k);
            out[VarId::s(f, k)] = sol.s(i, k);
            out[VarId::y(f, k)] = sol.y(i, k);
        }
    }
    return out;
}

namespace {

void setup_values_from_routes(const Instance& in, const RouteAssignment& routes, VarValueMap& out) {
    const Solution sol = from_routes(in, routes);
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int k = 0; k < in.num_periods; ++k) out[VarId::y(in.facility_id(i), k)] = sol.y(i, k);
}

}  // namespace

VarValueMap three_level_point(const Instance& in, const RouteAssignment& routes) {
    VarValueMap out;
    const int T = in.num_periods;
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int k = 0; k < T; ++k) {
                out[VarId::x3(b, r, k)] = 0.0;
                out[VarId::s3(b, r, k)] = 0.0;
            }
    for (const Route& rt : routes) {
        const double d = static_cast<double>(in.demand(rt.retailer, rt.period));
        const int stops[4] = {rt.k0, rt.k1, rt.k2, rt.period};
        for (int b = 0; b < 3; ++b) {
            out[VarId::x3(b, rt.retailer, stops[b])] += d;
            for (int u = stops[b]; u < stops[b + 1]; ++u) out[VarId::s3(b, rt.retailer, u)] += d;
        }
    }
    setup_values_from_routes(in, routes, out);
    return out;
}

VarValueMap mc_point(const Instance& in, const RouteAssignment& routes) {
    VarValueMap out;
    const int T = in.num_periods;
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int k = 0; k < T; ++k)
                for (int t = k; t < T; ++t) {
                    out[VarId::w(b, r, k, t)] = 0.0;
                    if (k < t) out[VarId::sig(b, r, k, t)] = 0.0;
                }
    for (const Route& rt : routes) {
        const double d = static_cast<double>(in.demand(rt.retailer, rt.period));
        const int stops[4] = {rt.k0, rt.k1, rt.k2, rt.period};
        for (int b = 0; b < 3; ++b) {
            out[VarId::w(b, rt.retailer, stops[b], rt.period)] += d;
            for (int u = stops[b]; u < stops[b + 1]; ++u) out[VarId::sig(b, rt.retailer, u, rt.period)] += d;
        }
    }
    setup_values_from_routes(in, routes, out);
    return out;
}

}  // namespace lotforge
