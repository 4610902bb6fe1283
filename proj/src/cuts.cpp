#include "lotforge/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lotforge {

std::string family_tag(CutFamily family) {
    switch (family) {
        case CutFamily::SingleLevelStd: return "sl_std";
        case CutFamily::TwoLevelStd: return "tl_std";
        case CutFamily::ThreeLevelStd: return "thl_std";
        case CutFamily::SingleLevel3lf: return "sl_3lf";
        case CutFamily::TwoLevel3lf: return "tl_3lf";
        case CutFamily::ThreeLevel3lf: return "thl_3lf";
    }
    return "?";
}

bool is_std_family(CutFamily family) {
    return family == CutFamily::SingleLevelStd || family == CutFamily::TwoLevelStd ||
           family == CutFamily::ThreeLevelStd;
}

std::string Cut::key() const {
    std::string k = family_tag(family);
    auto add = [&k](long long v) { k += ':' + std::to_string(v); };
    add(params.owner);
    add(params.level);
    add(params.successor_level);
    add(params.l);
    k += '|';
    for (int s : params.splits) add(s);
    k += '|';
    for (std::uint64_t m : params.masks) add(static_cast<long long>(m));
    return k;
}

double eval_inequality(const Cut& cut, const VarValueMap& point) {
    return evaluate_expr(cut.lhs, point) - cut.rhs;
}

namespace {

constexpr int kMaxPeriods = 64;

void check_horizon(const Instance& in) {
    if (in.num_periods > kMaxPeriods)
        throw std::invalid_argument("cut separation supports at most 64 periods");
}

bool in_mask(std::uint64_t mask, int k) { return (mask >> k) & 1U; }

// Appends the terms of one segment [first, last]: x_k for k outside S,
// d_{kl} y_k for k in S. Zero coefficients are dropped.
template <typename XVar, typename YVar, typename Demand>
void append_segment(LinearExpr& lhs, int first, int last, std::uint64_t mask, XVar xvar, YVar yvar, Demand dkl) {
    for (int k = first; k <= last; ++k) {
        if (in_mask(mask, k)) {
            const double c = dkl(k);
            if (c != 0.0) lhs.push_back({yvar(k), c});
        } else {
            lhs.push_back({xvar(k), 1.0});
        }
    }
}

std::uint64_t segment_bits(int first, int last) {
    std::uint64_t m = 0;
    for (int k = first; k <= last; ++k) m |= std::uint64_t{1} << k;
    return m;
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// Standard-space segment of facility `flat`.
void std_segment(LinearExpr& lhs, const Instance& in, const CumulativeDemand& cd, int flat, int first, int last,
                 int l, std::uint64_t mask) {
    const FacilityId f = in.facility_id(flat);
    append_segment(
        lhs, first, last, mask, [&](int k) { return VarId::x(f, k); }, [&](int k) { return VarId::y(f, k); },
        [&](int k) { return static_cast<double>(cd(flat, k, l)); });
}

// 3LF segment of retailer r at level b.
void lf_segment(LinearExpr& lhs, const Instance& in, const CumulativeDemand& cd, int r, int b, int first, int last,
                int l, std::uint64_t mask) {
    const FacilityId holder = in.facility_id(in.predecessor_at_level(r, b));
    const int ri = in.retailer(r);
    append_segment(
        lhs, first, last, mask, [&](int k) { return VarId::x3(b, r, k); },
        [&](int k) { return VarId::y(holder, k); }, [&](int k) { return static_cast<double>(cd(ri, k, l)); });
}

}  // namespace

Cut make_single_level_std(const Instance& in, int flat, int l, std::uint64_t s_mask) {
    check_horizon(in);
    require(flat >= 0 && flat < in.num_facilities(), "single-level: facility out of range");
    require(l >= 0 && l < in.num_periods, "single-level: l out of range");
    const CumulativeDemand cd(in);
    s_mask &= segment_bits(0, l);
    Cut cut{CutFamily::SingleLevelStd, {flat, -1, -1, l, {}, {s_mask}}, {}, static_cast<double>(cd(flat, 0, l))};
    std_segment(cut.lhs, in, cd, flat, 0, l, l, s_mask);
    return cut;
}

Cut make_two_level_std(const Instance& in, int flat, int successor_level, int l, int split, std::uint64_t owner_mask,
                       const std::vector<std::uint64_t>& successor_masks) {
    check_horizon(in);
    require(flat >= 0 && flat <= in.num_warehouses, "two-level: owner must be the plant or a warehouse");
    const int own_level = level_of(in.facility_id(flat).kind);
    require(successor_level > own_level && successor_level <= 2, "two-level: successor level must be lower");
    require(l >= 1 && l < in.num_periods, "two-level: l out of range");
    require(split >= 0 && split < l, "two-level: split must satisfy 1 <= l_i < l");
    const std::vector<int> succ = in.successors_at_level(flat, successor_level);
    require(successor_masks.size() == succ.size(), "two-level: one mask per successor required");

    const CumulativeDemand cd(in);
    Cut cut{CutFamily::TwoLevelStd, {flat, -1, successor_level, l, {split}, {}}, {},
            static_cast<double>(cd(flat, 0, l))};
    const std::uint64_t first_bits = segment_bits(0, split), second_bits = segment_bits(split + 1, l);
    cut.params.masks.push_back(owner_mask & first_bits);
    std_segment(cut.lhs, in, cd, flat, 0, split, l, owner_mask & first_bits);
    for (std::size_t j = 0; j < succ.size(); ++j) {
        const std::uint64_t m = successor_masks[j] & second_bits;
        cut.params.masks.push_back(m);
        std_segment(cut.lhs, in, cd, succ[j], split + 1, l, l, m);
    }
    return cut;
}

Cut make_three_level_std(const Instance& in, int l, int lp, int lw, std::uint64_t plant_mask,
                         const std::vector<std::uint64_t>& warehouse_masks,
                         const std::vector<std::uint64_t>& retailer_masks) {
    check_horizon(in);
    require(l >= 2 && l < in.num_periods, "three-level: l out of range");
    require(lp >= 0 && lp <= l - 2, "three-level: l_p must satisfy l_p <= l-2");
    require(lw > lp && lw <= l - 1, "three-level: l_w must satisfy l_p < l_w <= l-1");
    require(static_cast<int>(warehouse_masks.size()) == in.num_warehouses, "three-level: one mask per warehouse");
    require(static_cast<int>(retailer_masks.size()) == in.num_retailers, "three-level: one mask per retailer");

    const CumulativeDemand cd(in);
    Cut cut{CutFamily::ThreeLevelStd, {Instance::plant(), -1, -1, l, {lp, lw}, {}}, {},
            static_cast<double>(cd(Instance::plant(), 0, l))};
    const std::uint64_t pb = segment_bits(0, lp), wb = segment_bits(lp + 1, lw), rb = segment_bits(lw + 1, l);
    cut.params.masks.push_back(plant_mask & pb);
    std_segment(cut.lhs, in, cd, Instance::plant(), 0, lp, l, plant_mask & pb);
    for (int w = 0; w < in.num_warehouses; ++w) {
        cut.params.masks.push_back(warehouse_masks[w] & wb);
        std_segment(cut.lhs, in, cd, in.warehouse(w), lp + 1, lw, l, warehouse_masks[w] & wb);
    }
    for (int r = 0; r < in.num_retailers; ++r) {
        cut.params.masks.push_back(retailer_masks[r] & rb);
        std_segment(cut.lhs, in, cd, in.retailer(r), lw + 1, l, l, retailer_masks[r] & rb);
    }
    return cut;
}

Cut make_single_level_3lf(const Instance& in, int retailer, int level, int l, std::uint64_t s_mask) {
    check_horizon(in);
    require(retailer >= 0 && retailer < in.num_retailers, "3LF single-level: retailer out of range");
    require(level >= 0 && level <= 2, "3LF single-level: level must be 0, 1 or 2");
    require(l >= 0 && l < in.num_periods, "3LF single-level: l out of range");
    const CumulativeDemand cd(in);
    s_mask &= segment_bits(0, l);
    Cut cut{CutFamily::SingleLevel3lf, {retailer, level, -1, l, {}, {s_mask}}, {},
            static_cast<double>(cd(in.retailer(retailer), 0, l))};
    lf_segment(cut.lhs, in, cd, retailer, level, 0, l, l, s_mask);
    return cut;
}

Cut make_two_level_3lf(const Instance& in, int retailer, int level, int successor_level, int l, int split,
                       std::uint64_t first_mask, std::uint64_t second_mask) {
    check_horizon(in);
    require(retailer >= 0 && retailer < in.num_retailers, "3LF two-level: retailer out of range");
    require(level >= 0 && level < successor_level && successor_level <= 2, "3LF two-level: need b < b' <= 2");
    require(l >= 1 && l < in.num_periods, "3LF two-level: l out of range");
    require(split >= 0 && split < l, "3LF two-level: split must satisfy l_b < l");
    const CumulativeDemand cd(in);
    first_mask &= segment_bits(0, split);
    second_mask &= segment_bits(split + 1, l);
    Cut cut{CutFamily::TwoLevel3lf, {retailer, level, successor_level, l, {split}, {first_mask, second_mask}}, {},
            static_cast<double>(cd(in.retailer(retailer), 0, l))};
    lf_segment(cut.lhs, in, cd, retailer, level, 0, split, l, first_mask);
    lf_segment(cut.lhs, in, cd, retailer, successor_level, split + 1, l, l, second_mask);
    return cut;
}

Cut make_three_level_3lf(const Instance& in, int retailer, int l, int l0, int l1, std::uint64_t mask0,
                         std::uint64_t mask1, std::uint64_t mask2) {
    check_horizon(in);
    require(retailer >= 0 && retailer < in.num_retailers, "3LF three-level: retailer out of range");
    require(l >= 2 && l < in.num_periods, "3LF three-level: l out of range");
    require(l0 >= 0 && l0 <= l - 2, "3LF three-level: l_0 must satisfy l_0 < l-1");
    require(l1 > l0 && l1 <= l - 1, "3LF three-level: l_1 must satisfy l_0 < l_1 < l");
    const CumulativeDemand cd(in);
    mask0 &= segment_bits(0, l0);
    mask1 &= segment_bits(l0 + 1, l1);
    mask2 &= segment_bits(l1 + 1, l);
    Cut cut{CutFamily::ThreeLevel3lf, {retailer, -1, -1, l, {l0, l1}, {mask0, mask1, mask2}}, {},
            static_cast<double>(cd(in.retailer(retailer), 0, l))};
    lf_segment(cut.lhs, in, cd, retailer, 0, 0, l0, l, mask0);
    lf_segment(cut.lhs, in, cd, retailer, 1, l0 + 1, l1, l, mask1);
    lf_segment(cut.lhs, in, cd, retailer, 2, l1 + 1, l, l, mask2);
    return cut;
}

// ---------------------------------------------------------------------------
// Separation

namespace {

double value_of(const VarValueMap& point, const VarId& id) {
    const auto it = point.find(id);
    if (it == point.end()) throw std::out_of_range("separation: no value for " + var_name(id));
    return it->second;
}

// Dense copy of the x/y values a separator reads. Rows are "flow owners":
// facilities (standard) or (level, retailer) pairs (3LF).
struct DenseView {
    int T = 0;
    std::vector<double> x;  // owner x period
    std::vector<double> y;  // facility x period
    double xv(int owner, int k) const { return x[static_cast<std::size_t>(owner) * T + k]; }
    double yv(int flat, int k) const { return y[static_cast<std::size_t>(flat) * T + k]; }
};

DenseView std_view(const Instance& in, const VarValueMap& point) {
    DenseView v;
    v.T = in.num_periods;
    const int F = in.num_facilities();
    v.x.resize(static_cast<std::size_t>(F) * v.T);
    v.y.resize(v.x.size());
    for (int i = 0; i < F; ++i)
        for (int k = 0; k < v.T; ++k) {
            v.x[i * v.T + k] = value_of(point, VarId::x(in.facility_id(i), k));
            v.y[i * v.T + k] = value_of(point, VarId::y(in.facility_id(i), k));
        }
    return v;
}

// 3LF flow owner index of (level b, retailer r).
int lf_owner(const Instance& in, int b, int r) { return b * in.num_retailers + r; }

DenseView lf_view(const Instance& in, const VarValueMap& point) {
    DenseView v;
    v.T = in.num_periods;
    v.x.resize(static_cast<std::size_t>(3 * in.num_retailers) * v.T);
    v.y.resize(static_cast<std::size_t>(in.num_facilities()) * v.T);
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < in.num_retailers; ++r)
            for (int k = 0; k < v.T; ++k) v.x[lf_owner(in, b, r) * v.T + k] = value_of(point, VarId::x3(b, r, k));
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int k = 0; k < v.T; ++k) v.y[i * v.T + k] = value_of(point, VarId::y(in.facility_id(i), k));
    return v;
}

// Inspection rule for one owner and horizon end l: min term and S membership
// for each period k <= l, plus prefix sums of the min terms.
struct Inspection {
    std::vector<double> prefix;  // prefix[k+1] = sum_{u<=k} min term
    std::uint64_t s_mask = 0;    // k in S iff d_{kl} y_k <= x_k

    double sum(int first, int last) const { return first > last ? 0.0 : prefix[last + 1] - prefix[first]; }
};

Inspection inspect(int l, auto&& x_at, auto&& dy_at) {
    Inspection ins;
    ins.prefix.assign(l + 2, 0.0);
    for (int k = 0; k <= l; ++k) {
        const double xv = x_at(k), dy = dy_at(k);
        double term = xv;
        if (dy <= xv) {
            term = dy;
            ins.s_mask |= std::uint64_t{1} << k;
        }
        ins.prefix[k + 1] = ins.prefix[k] + term;
    }
    return ins;
}

Inspection inspect_std(const Instance& in, const CumulativeDemand& cd, const DenseView& v, int flat, int l) {
    (void)in;
    return inspect(
        l, [&](int k) { return v.xv(flat, k); },
        [&](int k) { return static_cast<double>(cd(flat, k, l)) * v.yv(flat, k); });
}

Inspection inspect_lf(const Instance& in, const CumulativeDemand& cd, const DenseView& v, int b, int r, int l) {
    const int holder = in.predecessor_at_level(r, b);
    const int ri = in.retailer(r);
    return inspect(
        l, [&](int k) { return v.xv(lf_owner(in, b, r), k); },
        [&](int k) { return static_cast<double>(cd(ri, k, l)) * v.yv(holder, k); });
}

// Candidate filter on the prefix-sum violation with a small slack; the exact
// violation of the assembled cut decides.
bool candidate(double approx_violation, double tol, double rhs) {
    return approx_violation > tol - 1e-9 * (1.0 + std::abs(rhs));
}

void emit_if_violated(std::vector<Cut>& out, Cut cut, const VarValueMap& point, double tol) {
    if (violation(cut, point) > tol) out.push_back(std::move(cut));
}

}  // namespace

std::vector<Cut> separate_single_level_std(const Instance& in, const VarValueMap& point, double tol) {
    check_horizon(in);
    const CumulativeDemand cd(in);
    const DenseView v = std_view(in, point);
    std::vector<Cut> out;
    for (int i = 0; i < in.num_facilities(); ++i)
        for (int l = 0; l < in.num_periods; ++l) {
            const Inspection ins = inspect_std(in, cd, v, i, l);
            const double rhs = static_cast<double>(cd(i, 0, l));
            if (!candidate(rhs - ins.sum(0, l), tol, rhs)) continue;
            emit_if_violated(out, make_single_level_std(in, i, l, ins.s_mask), point, tol);
        }
    return out;
}

std::vector<Cut> separate_two_level_std(const Instance& in, const VarValueMap& point, double tol) {
    check_horizon(in);
    const CumulativeDemand cd(in);
    const DenseView v = std_view(in, point);
    const int T = in.num_periods;
    std::vector<Cut> out;

    // (owner, successor level) pairs: plant->warehouses, plant->retailers, warehouse->its retailers.
    std::vector<std::pair<int, int>> pairs{{Instance::plant(), 1}, {Instance::plant(), 2}};
    for (int w = 0; w < in.num_warehouses; ++w) pairs.emplace_back(in.warehouse(w), 2);

    for (const auto& [owner, succ_level] : pairs) {
        const std::vector<int> succ = in.successors_at_level(owner, succ_level);
        for (int l = 1; l < T; ++l) {
            const Inspection own = inspect_std(in, cd, v, owner, l);
            std::vector<Inspection> kids;
            kids.reserve(succ.size());
            std::vector<double> group(l + 2, 0.0);
            for (int j : succ) {
                kids.push_back(inspect_std(in, cd, v, j, l));
                for (int k = 0; k <= l + 1; ++k) group[k] += kids.back().prefix[k];
            }
            const double rhs = static_cast<double>(cd(owner, 0, l));
            for (int split = 0; split < l; ++split) {
                const double lhs = own.sum(0, split) + (group[l + 1] - group[split + 1]);
                if (!candidate(rhs - lhs, tol, rhs)) continue;
                std::vector<std::uint64_t> masks;
                masks.reserve(kids.size());
                for (const auto& k : kids) masks.push_back(k.s_mask);
                emit_if_violated(out, make_two_level_std(in, owner, succ_level, l, split, own.s_mask, masks), point,
                                 tol);
            }
        }
    }
    return out;
}

std::vector<Cut> separate_three_level_std(const Instance& in, const VarValueMap& point, double tol) {
    check_horizon(in);
    const CumulativeDemand cd(in);
    const DenseView v = std_view(in, point);
    const int T = in.num_periods;
    std::vector<Cut> out;
    for (int l = 2; l < T; ++l) {
        const Inspection plant = inspect_std(in, cd, v, Instance::plant(), l);
        std::vector<Inspection> ws, rs;
        std::vector<double> gw(l + 2, 0.0), gr(l + 2, 0.0);
        for (int w = 0; w < in.num_warehouses; ++w) {
            ws.push_back(inspect_std(in, cd, v, in.warehouse(w), l));
            for (int k = 0; k <= l + 1; ++k) gw[k] += ws.back().prefix[k];
        }
        for (int r = 0; r < in.num_retailers; ++r) {
            rs.push_back(inspect_std(in, cd, v, in.retailer(r), l));
            for (int k = 0; k <= l + 1; ++k) gr[k] += rs.back().prefix[k];
        }
        const double rhs = static_cast<double>(cd(Instance::plant(), 0, l));
        for (int lp = 0; lp <= l - 2; ++lp)
            for (int lw = lp + 1; lw <= l - 1; ++lw) {
                const double lhs = plant.sum(0, lp) + (gw[lw + 1] - gw[lp + 1]) + (gr[l + 1] - gr[lw + 1]);
                if (!candidate(rhs - lhs, tol, rhs)) continue;
                std::vector<std::uint64_t> wm, rm;
                for (const auto& x : ws) wm.push_back(x.s_mask);
                for (const auto& x : rs) rm.push_back(x.s_mask);
                emit_if_violated(out, make_three_level_std(in, l, lp, lw, plant.s_mask, wm, rm), point, tol);
            }
    }
    return out;
}

std::vector<Cut> separate_single_level_3lf(const Instance& in, const VarValueMap& point, double tol) {
    check_horizon(in);
    const CumulativeDemand cd(in);
    const DenseView v = lf_view(in, point);
    std::vector<Cut> out;
    for (int r = 0; r < in.num_retailers; ++r)
        for (int b = 0; b < 3; ++b)
            for (int l = 0; l < in.num_periods; ++l) {
                const Inspection ins = inspect_lf(in, cd, v, b, r, l);
                const double rhs = static_cast<double>(cd(in.retailer(r), 0, l));
                if (!candidate(rhs - ins.sum(0, l), tol, rhs)) continue;
                emit_if_violated(out, make_single_level_3lf(in, r, b, l, ins.s_mask), point, tol);
            }
    return out;
}

std::vector<Cut> separate_two_level_3lf(const Instance& in, const VarValueMap& point, double tol) {
    check_horizon(in);
    const CumulativeDemand cd(in);
    const DenseView v = lf_view(in, point);
    std::vector<Cut> out;
    constexpr std::pair<int, int> kLevels[] = {{0, 1}, {0, 2}, {1, 2}};
    for (int r = 0; r < in.num_retailers; ++r)
        for (const auto& [b, bp] : kLevels)
            for (int l = 1; l < in.num_periods; ++l) {
                const Inspection first = inspect_lf(in, cd, v, b, r, l);
                const Inspection second = inspect_lf(in, cd, v, bp, r, l);
                const double rhs = static_cast<double>(cd(in.retailer(r), 0, l));
                for (int split = 0; split < l; ++split) {
                    const double lhs = first.sum(0, split) + second.sum(split + 1, l);
                    if (!candidate(rhs - lhs, tol, rhs)) continue;
                    emit_if_violated(out, make_two_level_3lf(in, r, b, bp, l, split, first.s_mask, second.s_mask),
                                     point, tol);
                }
            }
    return out;
}

std::vector<Cut> separate_three_level_3lf(const Instance& in, const VarValueMap& point, double tol) {
    check_horizon(in);
    const CumulativeDemand cd(in);
    const DenseView v = lf_view(in, point);
    std::vector<Cut> out;
    for (int r = 0; r < in.num_retailers; ++r)
        for (int l = 2; l < in.num_periods; ++l) {
            const Inspection i0 = inspect_lf(in, cd, v, 0, r, l);
            const Inspection i1 = inspect_lf(in, cd, v, 1, r, l);
            const Inspection i2 = inspect_lf(in, cd, v, 2, r, l);
            const double rhs = static_cast<double>(cd(in.retailer(r), 0, l));
            for (int l0 = 0; l0 <= l - 2; ++l0)
                for (int l1 = l0 + 1; l1 <= l - 1; ++l1) {
                    const double lhs = i0.sum(0, l0) + i1.sum(l0 + 1, l1) + i2.sum(l1 + 1, l);
                    if (!candidate(rhs - lhs, tol, rhs)) continue;
                    emit_if_violated(out,
                                     make_three_level_3lf(in, r, l, l0, l1, i0.s_mask, i1.s_mask, i2.s_mask), point,
                                     tol);
                }
        }
    return out;
}

}  // namespace lotforge
