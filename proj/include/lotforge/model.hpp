#ifndef LOTFORGE_MODEL_HPP
#define LOTFORGE_MODEL_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lotforge/instance.hpp"

namespace lotforge {

/// Variable families of the three formulations.
///   x_std, s_std, y : standard space, indexed by facility and period k
///   w0..w2, sig0..sig2 : multi-commodity, indexed by retailer, period k and demand period t
///   x3, s3 : retailer-disaggregated flows, indexed by level, retailer and period k
/// y is shared by every formulation.
enum class VarFamily { XStd, SStd, Y, W0, W1, W2, Sig0, Sig1, Sig2, X3, S3 };

struct VarId {
    VarFamily family = VarFamily::Y;
    FacilityId facility;  // retailer for the MC and 3LF families
    int k = 0;            // period, 0-based
    int t = -1;           // demand period (MC only)
    int level = -1;       // 0..2 (x3/s3 only)

    auto operator<=>(const VarId&) const = default;

    static VarId x(FacilityId f, int k) { return {VarFamily::XStd, f, k, -1, -1}; }
    static VarId s(FacilityId f, int k) { return {VarFamily::SStd, f, k, -1, -1}; }
    static VarId y(FacilityId f, int k) { return {VarFamily::Y, f, k, -1, -1}; }
    static VarId w(int level, int r, int k, int t);
    static VarId sig(int level, int r, int k, int t);
    static VarId x3(int level, int r, int k) {
        return {VarFamily::X3, {FacilityKind::Retailer, r}, k, -1, level};
    }
    static VarId s3(int level, int r, int k) {
        return {VarFamily::S3, {FacilityKind::Retailer, r}, k, -1, level};
    }
};

struct VarIdHash {
    std::size_t operator()(const VarId& v) const noexcept {
        std::size_t h = static_cast<std::size_t>(v.family);
        auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(static_cast<std::size_t>(v.facility.kind));
        mix(static_cast<std::size_t>(v.facility.index));
        mix(static_cast<std::size_t>(v.k));
        mix(static_cast<std::size_t>(v.t + 1));
        mix(static_cast<std::size_t>(v.level + 1));
        return h;
    }
};

/// LP-file name, bijective with VarId. Periods are written 1-based:
/// `x_w3_t7`, `s_p_t1`, `y_r0_t2`, `w2_r12_k3_t9`, `sig0_r1_k1_t3`, `xb1_r4_t2`, `sb0_r4_t2`.
std::string var_name(const VarId& v);
std::optional<VarId> parse_var_name(std::string_view name);

using VarValueMap = std::unordered_map<VarId, double, VarIdHash>;

struct Term {
    VarId var;
    double coef = 0.0;
    bool operator==(const Term&) const = default;
};
using LinearExpr = std::vector<Term>;

enum class Sense { Le, Ge, Eq };

struct Variable {
    VarId id;
    double lb = 0.0;
    double ub = std::numeric_limits<double>::infinity();
    bool binary = false;
    bool operator==(const Variable&) const = default;
};

struct Constraint {
    std::string name;
    LinearExpr expr;
    Sense sense = Sense::Eq;
    double rhs = 0.0;
    bool operator==(const Constraint&) const = default;
};

enum class FormulationKind { Std, Mc, ThreeLevel, Other };

/// Solver-agnostic mixed integer model.
class MipModel {
public:
    FormulationKind kind = FormulationKind::Other;
    int num_periods = 0;
    int num_warehouses = 0;
    int num_retailers = 0;

    /// Adds a variable; throws std::invalid_argument if already declared.
    std::size_t add_variable(const Variable& var);
    void add_constraint(Constraint c) { constraints_.push_back(std::move(c)); }
    void set_objective(LinearExpr obj) { objective_ = std::move(obj); }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const LinearExpr& objective() const { return objective_; }

    bool has_variable(const VarId& id) const { return index_.count(id) != 0; }
    std::optional<std::size_t> find(const VarId& id) const;
    Variable& variable(const VarId& id);
    const Variable& variable(const VarId& id) const;

    /// Names of undeclared variables used in the objective or rows.
    std::vector<std::string> undeclared() const;

    bool structurally_equal(const MipModel& other) const {
        return variables_ == other.variables_ && constraints_ == other.constraints_ &&
               objective_ == other.objective_;
    }

private:
    std::vector<Variable> variables_;
    std::unordered_map<VarId, std::size_t, VarIdHash> index_;
    std::vector<Constraint> constraints_;
    LinearExpr objective_;
};

/// Sum of coef * value; throws std::out_of_range if a variable has no value.
double evaluate_expr(const LinearExpr& expr, const VarValueMap& point);

double objective_value(const MipModel& model, const VarValueMap& point);

/// Names of every row (and `bound:<var>` for bounds) violated by more than tol.
/// Variables missing from the point are reported as `missing:<var>`.
std::vector<std::string> evaluate_point(const MipModel& model, const VarValueMap& point, double tol = 1e-6);

}  // namespace lotforge

#endif
