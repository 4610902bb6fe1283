#ifndef LOTFORGE_PREPROCESS_HPP
#define LOTFORGE_PREPROCESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lotforge/instance.hpp"
#include "lotforge/model.hpp"

namespace lotforge {

/// Retailer-level MC variables w2_{r,k,t'} fixed to zero. Stored as the
/// threshold t_min per (retailer, source period): every t' >= t_min is
/// removed, so the set is closed under increasing t' by construction.
class RemovalSet {
public:
    RemovalSet() = default;
    RemovalSet(int num_retailers, int num_periods);

    int num_retailers() const { return static_cast<int>(t_min_.rows()); }
    int num_periods() const { return static_cast<int>(t_min_.cols()); }

    /// Smallest removed demand period for (r, k), or -1 when none is removed.
    int t_min(int r, int k) const { return t_min_(r, k); }
    void set_t_min(int r, int k, int t);

    bool contains(int r, int k, int t) const {
        const int m = t_min_(r, k);
        return m >= 0 && t >= m;
    }

    /// Number of removed variables.
    std::int64_t np() const;
    /// Number of candidates: |R| * T * (T - 1) / 2.
    std::int64_t pot() const;
    /// 100 * np / pot; 0 when pot is 0.
    double red() const;

    struct Triple {
        int retailer;
        int k;
        int t;
        auto operator<=>(const Triple&) const = default;
    };
    /// All removed (r, k, t') in ascending order.
    std::vector<Triple> triples() const;

    bool operator==(const RemovalSet&) const = default;

private:
    Matrix<int> t_min_;
};

/// For each retailer r and period k, the smallest t > k with
///   d_t * sum_{l=k}^{t-1} hc^r_l >= d_t * sum_{l=k}^{t-1} hc^w_l + sc^r_t,
/// w the warehouse of r. The inequality is evaluated literally, including
/// zero-demand periods.
RemovalSet compute_removals(const Instance& instance);

/// Copy of an MC model with the upper bound of every removed w2 variable set
/// to 0. Throws std::invalid_argument if the model is not MC or its
/// dimensions differ from the removal set.
MipModel apply_removals(const MipModel& mc_model, const RemovalSet& removals);

/// CSV `retailer,k,t_min` (1-based, one line per (r, k) with removals),
/// followed by `np,pot,red` and its values.
std::string removal_report_csv(const RemovalSet& removals);

}  // namespace lotforge

#endif
