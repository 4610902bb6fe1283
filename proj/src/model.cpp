#include "lotforge/model.hpp"

#include <cmath>
#include <stdexcept>

#include "lotforge/number_format.hpp"

namespace lotforge {

VarId VarId::w(int level, int r, int k, int t) {
    return {static_cast<VarFamily>(static_cast<int>(VarFamily::W0) + level), {FacilityKind::Retailer, r}, k, t, -1};
}

VarId VarId::sig(int level, int r, int k, int t) {
    return {static_cast<VarFamily>(static_cast<int>(VarFamily::Sig0) + level), {FacilityKind::Retailer, r}, k, t, -1};
}

std::string var_name(const VarId& v) {
    const std::string fac = facility_name(v.facility);
    const std::string k = std::to_string(v.k + 1);
    switch (v.family) {
        case VarFamily::XStd: return "x_" + fac + "_t" + k;
        case VarFamily::SStd: return "s_" + fac + "_t" + k;
        case VarFamily::Y: return "y_" + fac + "_t" + k;
        case VarFamily::W0:
        case VarFamily::W1:
        case VarFamily::W2:
            return "w" + std::to_string(static_cast<int>(v.family) - static_cast<int>(VarFamily::W0)) + "_" + fac +
                   "_k" + k + "_t" + std::to_string(v.t + 1);
        case VarFamily::Sig0:
        case VarFamily::Sig1:
        case VarFamily::Sig2:
            return "sig" + std::to_string(static_cast<int>(v.family) - static_cast<int>(VarFamily::Sig0)) + "_" +
                   fac + "_k" + k + "_t" + std::to_string(v.t + 1);
        case VarFamily::X3: return "xb" + std::to_string(v.level) + "_" + fac + "_t" + k;
        case VarFamily::S3: return "sb" + std::to_string(v.level) + "_" + fac + "_t" + k;
    }
    return "?";
}

namespace {

std::vector<std::string_view> split_underscore(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto us = s.find('_', pos);
        parts.push_back(s.substr(pos, us == std::string_view::npos ? std::string_view::npos : us - pos));
        if (us == std::string_view::npos) break;
        pos = us + 1;
    }
    return parts;
}

std::optional<int> number_after(std::string_view part, std::string_view prefix) {
    if (part.size() <= prefix.size() || part.substr(0, prefix.size()) != prefix) return std::nullopt;
    const auto v = parse_integer(part.substr(prefix.size()));
    if (!v || *v < 0 || *v > 1'000'000'000) return std::nullopt;
    return static_cast<int>(*v);
}

std::optional<FacilityId> parse_facility(std::string_view part) {
    if (part == "p") return FacilityId{FacilityKind::Plant, 0};
    if (auto n = number_after(part, "w")) return FacilityId{FacilityKind::Warehouse, *n};
    if (auto n = number_after(part, "r")) return FacilityId{FacilityKind::Retailer, *n};
    return std::nullopt;
}

std::optional<VarId> parse_unchecked(std::string_view name) {
    const auto parts = split_underscore(name);
    if (parts.size() == 3) {
        const auto fac = parse_facility(parts[1]);
        const auto k = number_after(parts[2], "t");
        if (!fac || !k || *k < 1) return std::nullopt;
        const std::string_view head = parts[0];
        if (head == "x") return VarId::x(*fac, *k - 1);
        if (head == "s") return VarId::s(*fac, *k - 1);
        if (head == "y") return VarId::y(*fac, *k - 1);
        if (fac->kind != FacilityKind::Retailer) return std::nullopt;
        if (auto b = number_after(head, "xb"); b && *b <= 2) return VarId::x3(*b, fac->index, *k - 1);
        if (auto b = number_after(head, "sb"); b && *b <= 2) return VarId::s3(*b, fac->index, *k - 1);
        return std::nullopt;
    }
    if (parts.size() == 4) {
        const auto fac = parse_facility(parts[1]);
        const auto k = number_after(parts[2], "k");
        const auto t = number_after(parts[3], "t");
        if (!fac || fac->kind != FacilityKind::Retailer || !k || !t || *k < 1 || *k > *t) return std::nullopt;
        if (auto b = number_after(parts[0], "sig"); b && *b <= 2 && *k < *t) return VarId::sig(*b, fac->index, *k - 1, *t - 1);
        if (auto b = number_after(parts[0], "w"); b && *b <= 2) return VarId::w(*b, fac->index, *k - 1, *t - 1);
    }
    return std::nullopt;
}

}  // namespace

std::optional<VarId> parse_var_name(std::string_view name) {
    auto id = parse_unchecked(name);
    // Reject spellings such as "w02" or "t+3" that would break bijectivity.
    if (id && var_name(*id) != name) return std::nullopt;
    return id;
}

// ---------------------------------------------------------------------------

std::size_t MipModel::add_variable(const Variable& var) {
    const auto [it, inserted] = index_.emplace(var.id, variables_.size());
    if (!inserted) throw std::invalid_argument("duplicate variable " + var_name(var.id));
    variables_.push_back(var);
    return it->second;
}

std::optional<std::size_t> MipModel::find(const VarId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Variable& MipModel::variable(const VarId& id) {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown variable " + var_name(id));
    return variables_[it->second];
}

const Variable& MipModel::variable(const VarId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown variable " + var_name(id));
    return variables_[it->second];
}

std::vector<std::string> MipModel::undeclared() const {
    std::vector<std::string> out;
    auto scan = [&](const LinearExpr& e) {
        for (const Term& t : e)
            if (!has_variable(t.var)) out.push_back(var_name(t.var));
    };
    scan(objective_);
    for (const auto& c : constraints_) scan(c.expr);
    return out;
}

double evaluate_expr(const LinearExpr& expr, const VarValueMap& point) {
    double sum = 0.0;
    for (const Term& t : expr) {
        const auto it = point.find(t.var);
        if (it == point.end()) throw std::out_of_range("no value for variable " + var_name(t.var));
        sum += t.coef * it->second;
    }
    return sum;
}

double objective_value(const MipModel& model, const VarValueMap& point) {
    return evaluate_expr(model.objective(), point);
}

std::vector<std::string> evaluate_point(const MipModel& model, const VarValueMap& point, double tol) {
    std::vector<std::string> violated;
    bool complete = true;
    for (const Variable& v : model.variables()) {
        const auto it = point.find(v.id);
        if (it == point.end()) {
            violated.push_back("missing:" + var_name(v.id));
            complete = false;
            continue;
        }
        if (it->second < v.lb - tol || it->second > v.ub + tol) violated.push_back("bound:" + var_name(v.id));
    }
    if (!complete) return violated;
    for (const Constraint& c : model.constraints()) {
        const double lhs = evaluate_expr(c.expr, point);
        bool ok = true;
        switch (c.sense) {
            case Sense::Le: ok = lhs <= c.rhs + tol; break;
            case Sense::Ge: ok = lhs >= c.rhs - tol; break;
            case Sense::Eq: ok = std::abs(lhs - c.rhs) <= tol; break;
        }
        if (!ok) violated.push_back(c.name);
    }
    return violated;
}

}  // namespace lotforge
