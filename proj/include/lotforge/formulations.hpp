#ifndef LOTFORGE_FORMULATIONS_HPP
#define LOTFORGE_FORMULATIONS_HPP

#include "lotforge/instance.hpp"
#include "lotforge/model.hpp"
#include "lotforge/solution.hpp"

namespace lotforge {

/// Standard formulation: x, s, y per facility and period; balance rows at
/// every facility and setup rows x <= d_{tT} y.
MipModel build_std(const Instance& instance);

/// Multi-commodity formulation: flows and stocks disaggregated by
/// (retailer, demand period); setup rows w <= d^r_t y.
MipModel build_mc(const Instance& instance);

/// Retailer-disaggregated three-level formulation; setup rows
/// x^{b,r}_t <= d^r_{tT} y^{pred_b(r)}_t.
MipModel build_3lf(const Instance& instance);

/// Aggregates a 3LF point into the standard space:
/// x^i_k = sum over descendant retailers r of x^{level(i),r}_k, same for s;
/// y passes through. Throws std::out_of_range on a missing value.
VarValueMap map_3lf_to_std(const Instance& instance, const VarValueMap& point);

/// Standard-space values of a solution (x, s, y for every facility and period).
VarValueMap std_point(const Instance& instance, const Solution& solution);

/// 3LF values obtained by tracking each routed demand through its retailer's flows.
VarValueMap three_level_point(const Instance& instance, const RouteAssignment& routes);

/// MC values obtained by tracking each routed demand as its own commodity.
VarValueMap mc_point(const Instance& instance, const RouteAssignment& routes);

}  // namespace lotforge

#endif
