#ifndef LOTFORGE_INSTANCE_HPP
#define LOTFORGE_INSTANCE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lotforge/matrix.hpp"

namespace lotforge {

enum class FacilityKind { Plant, Warehouse, Retailer };

/// A facility named by its level and its ordinal within the level.
struct FacilityId {
    FacilityKind kind = FacilityKind::Plant;
    int index = 0;

    auto operator<=>(const FacilityId&) const = default;
};

/// Level in the network: 0 plant, 1 warehouse, 2 retailer.
inline int level_of(FacilityKind kind) { return static_cast<int>(kind); }

/// "p", "w3", "r12".
std::string facility_name(FacilityId id);

/// Three-level distribution network with a finite horizon.
///
/// Facilities are also addressed by a flat index: 0 is the plant,
/// 1..W the warehouses and W+1..W+R the retailers. The setup and holding
/// matrices are stored in that order. Periods are 0-based here and 1-based
/// in every external format.
struct Instance {
    int num_periods = 0;
    int num_warehouses = 0;
    int num_retailers = 0;
    std::vector<int> retailer_warehouse;  // retailer -> warehouse
    Matrix<std::int64_t> demand;          // retailer x period
    Matrix<double> setup_cost;            // facility x period
    Matrix<double> holding_cost;          // facility x period

    int num_facilities() const { return 1 + num_warehouses + num_retailers; }

    static constexpr int plant() { return 0; }
    int warehouse(int w) const { return 1 + w; }
    int retailer(int r) const { return 1 + num_warehouses + r; }

    FacilityId facility_id(int flat) const;
    int flat_index(FacilityId id) const;

    /// Flat index of the predecessor of retailer r at level b (0 plant, 1 warehouse, 2 itself).
    int predecessor_at_level(int r, int b) const;

    /// Retailers attended by warehouse w, ascending.
    std::vector<int> retailers_of(int w) const;

    /// Retailers that descend from the facility (all of them for the plant).
    std::vector<int> descendant_retailers(int flat) const;

    /// Direct successors of a plant or warehouse, as flat indices.
    std::vector<int> successors(int flat) const;

    /// Successors of `flat` at `level` (> level of flat), as flat indices.
    std::vector<int> successors_at_level(int flat, int level) const;

    bool operator==(const Instance&) const = default;
};

/// Every invariant violation of `instance`; empty when valid.
std::vector<std::string> validate(const Instance& instance);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid(const Instance& instance);

/// Per-facility demands d^i_t and cumulative demands d^i_{kt} (k <= t, both 0-based).
class CumulativeDemand {
public:
    CumulativeDemand() = default;
    explicit CumulativeDemand(const Instance& instance);

    int num_facilities() const { return num_facilities_; }
    int num_periods() const { return num_periods_; }

    /// Demand of facility `flat` in period t (aggregated over descendants).
    std::int64_t period_demand(int flat, int t) const { return demand_(flat, t); }

    /// Sum of period demands over k..t inclusive; 0 when k > t.
    std::int64_t operator()(int flat, int k, int t) const {
        if (k > t) return 0;
        return prefix_(flat, t + 1) - prefix_(flat, k);
    }

    /// d^i_{t,T}: everything still needed from period t on.
    std::int64_t remaining(int flat, int t) const { return (*this)(flat, t, num_periods_ - 1); }

private:
    int num_facilities_ = 0;
    int num_periods_ = 0;
    Matrix<std::int64_t> demand_;
    Matrix<std::int64_t> prefix_;  // facility x (T+1)
};

CumulativeDemand cumulative_demand(const Instance& instance);

// ---------------------------------------------------------------------------
// Benchmark generator

enum class VariationType { Static, Dynamic };
enum class NetworkShape { Balanced, Unbalanced };

struct InstanceSpec {
    int num_retailers = 50;
    int num_warehouses = 5;
    int num_periods = 15;
    VariationType demand_type = VariationType::Dynamic;
    VariationType fixed_cost_type = VariationType::Dynamic;
    NetworkShape network_shape = NetworkShape::Balanced;
    std::uint64_t seed = 1;
};

/// Group label "|R|_|T|_|W|_typeD_typeF", e.g. "50_15_5_D_S".
std::string group_name(const InstanceSpec& spec);

/// Retailer -> warehouse assignment for the given shape.
std::vector<int> assign_retailers(int num_retailers, int num_warehouses, NetworkShape shape);

/// Deterministic benchmark instance. Throws std::invalid_argument when
/// num_warehouses > num_retailers or a count is non-positive.
Instance generate(const InstanceSpec& spec);

// ---------------------------------------------------------------------------
// Text format

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Instance read_instance(std::string_view text);
std::string write_instance(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace lotforge

#endif
