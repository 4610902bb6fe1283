#ifndef LOTFORGE_LP_FORMAT_HPP
#define LOTFORGE_LP_FORMAT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lotforge/model.hpp"
#include "lotforge/solution.hpp"

namespace lotforge {

struct LpExportOptions {
    /// Drop the Binaries section so the file describes the LP relaxation.
    bool relax = false;
};

/// CPLEX LP text: `Minimize`, `Subject To`, `Bounds`, `Binaries`, `End`.
/// Every variable is listed in `Bounds` in model order, so parse_lp restores
/// the declaration order.
std::string export_lp(const MipModel& model, const LpExportOptions& options = {});

class LpParseError : public std::runtime_error {
public:
    LpParseError(int line, const std::string& reason)
        : std::runtime_error("LP line " + std::to_string(line) + ": " + reason), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Structural inverse of export_lp. Variable names must follow var_name().
MipModel parse_lp(std::string_view text);

/// `<varname> <value>` per line for the standard-space values of a solution.
std::string mip_start_text(const Instance& instance, const Solution& solution);

/// Reads `<varname> <value>` lines (blank lines and lines starting with '#'
/// or '\' ignored). A line `obj <value>` or `objective <value>` sets *objective.
VarValueMap parse_point_text(std::string_view text, std::optional<double>* objective = nullptr);

}  // namespace lotforge

#endif
