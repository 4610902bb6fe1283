#ifndef LOTFORGE_CUTS_HPP
#define LOTFORGE_CUTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lotforge/instance.hpp"
#include "lotforge/model.hpp"

namespace lotforge {

// (l,S)-type inequalities for the three-level network. Each inequality covers
// the cumulative demand d_{1l} of one facility (standard space) or one
// retailer (3LF space) with consecutive period segments, each segment
// assigned to one level of the network. Inside a segment every period k
// contributes either its flow variable or d_{kl} times its setup variable;
// the periods taking the setup term form the set S of that segment.
//
// Separation fixes the structure (owner, l, split points) and picks S by
// inspection: period k goes to S iff d_{kl} * y_k <= x_k. This is the most
// violated member for that structure because the terms are independent.

enum class CutFamily {
    SingleLevelStd,
    TwoLevelStd,
    ThreeLevelStd,
    SingleLevel3lf,
    TwoLevel3lf,
    ThreeLevel3lf,
};

/// "sl_std", "tl_std", "thl_std", "sl_3lf", "tl_3lf", "thl_3lf".
std::string family_tag(CutFamily family);

bool is_std_family(CutFamily family);

/// Structural parameters plus the chosen S sets. Periods are 0-based.
struct CutParams {
    int owner = 0;             // facility flat index (standard) or retailer (3LF)
    int level = -1;            // first-segment level b (3LF single/two-level)
    int successor_level = -1;  // b' (two-level families)
    int l = 0;                 // last covered period
    std::vector<int> splits;   // last period of each segment except the final one
    // S per segment slot, bit k set when period k is in S. Slot order:
    //   single level: [S]
    //   two-level std: [S^i, S^j for each successor j ascending]
    //   three-level std: [S^p, S^w for each warehouse, S^r for each retailer]
    //   3LF families: one per segment, upstream first
    std::vector<std::uint64_t> masks;

    auto operator<=>(const CutParams&) const = default;
};

/// A valid inequality lhs >= rhs.
struct Cut {
    CutFamily family = CutFamily::SingleLevelStd;
    CutParams params;
    LinearExpr lhs;
    double rhs = 0.0;

    /// Dedup key: family tag plus parameters.
    std::string key() const;
};

/// lhs(point) - rhs. Nonnegative means satisfied. Throws std::out_of_range
/// when a variable of the cut has no value.
double eval_inequality(const Cut& cut, const VarValueMap& point);

/// rhs - lhs(point).
inline double violation(const Cut& cut, const VarValueMap& point) { return -eval_inequality(cut, point); }

// Builders for a fully specified member of each family; the separators use
// them, and tests use them to enumerate every S.

/// Single-level standard inequality of facility `flat` over 1..l.
Cut make_single_level_std(const Instance& instance, int flat, int l, std::uint64_t s_mask);

/// Two-level standard inequality: facility `flat` on 1..split, its successors
/// at `successor_level` on split+1..l. `successor_masks` follows
/// Instance::successors_at_level order.
Cut make_two_level_std(const Instance& instance, int flat, int successor_level, int l, int split,
                       std::uint64_t owner_mask, const std::vector<std::uint64_t>& successor_masks);

/// Three-level standard inequality: plant on 1..lp, every warehouse on
/// lp+1..lw, every retailer on lw+1..l.
Cut make_three_level_std(const Instance& instance, int l, int lp, int lw, std::uint64_t plant_mask,
                         const std::vector<std::uint64_t>& warehouse_masks,
                         const std::vector<std::uint64_t>& retailer_masks);

Cut make_single_level_3lf(const Instance& instance, int retailer, int level, int l, std::uint64_t s_mask);

Cut make_two_level_3lf(const Instance& instance, int retailer, int level, int successor_level, int l, int split,
                       std::uint64_t first_mask, std::uint64_t second_mask);

Cut make_three_level_3lf(const Instance& instance, int retailer, int l, int l0, int l1, std::uint64_t mask0,
                         std::uint64_t mask1, std::uint64_t mask2);

// Separators: every structural choice whose most violated member exceeds
// `tol` yields one cut. Standard separators read x_std and y values, 3LF
// separators read x3 and y values. Throw std::out_of_range on missing values
// and std::invalid_argument when the horizon exceeds 64 periods.

std::vector<Cut> separate_single_level_std(const Instance& instance, const VarValueMap& point, double tol);
std::vector<Cut> separate_two_level_std(const Instance& instance, const VarValueMap& point, double tol);
std::vector<Cut> separate_three_level_std(const Instance& instance, const VarValueMap& point, double tol);
std::vector<Cut> separate_single_level_3lf(const Instance& instance, const VarValueMap& point, double tol);
std::vector<Cut> separate_two_level_3lf(const Instance& instance, const VarValueMap& point, double tol);
std::vector<Cut> separate_three_level_3lf(const Instance& instance, const VarValueMap& point, double tol);

}  // namespace lotforge

#endif
