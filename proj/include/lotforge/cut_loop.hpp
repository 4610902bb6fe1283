#ifndef LOTFORGE_CUT_LOOP_HPP
#define LOTFORGE_CUT_LOOP_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lotforge/cuts.hpp"
#include "lotforge/model.hpp"

namespace lotforge {

/// Root cutting-plane schedule. Rounds are 1-based: single-level families
/// every round, two-level on multiples of two_level_every, three-level on
/// multiples of three_level_every.
struct CutConfig {
    double violation_tol = 10.0;
    int max_rounds = 20;
    int two_level_every = 5;
    int three_level_every = 10;
};

/// Relaxation solution returned by an LP source.
struct LpResult {
    VarValueMap values;
    std::optional<double> objective;
};

/// Solves the relaxation of the model it is given (base rows plus the current
/// pool). std::nullopt means no solution is available.
using LpSource = std::function<std::optional<LpResult>(const MipModel&)>;

enum class LoopStatus { Converged, RoundLimit, SourceUnavailable };

struct CutLoopResult {
    std::vector<Cut> pool;
    int rounds = 0;                       // rounds whose separation completed
    std::optional<double> final_objective;
    std::vector<std::optional<double>> round_objectives;
    std::vector<int> cuts_per_round;
    LoopStatus status = LoopStatus::Converged;
};

/// Copy of `model` with each cut appended as row `cut_<family>_<n>` (n 1-based in pool order).
MipModel with_cuts(const MipModel& model, const std::vector<Cut>& cuts);

/// Runs up to config.max_rounds rounds against `source`, adding every violated
/// cut not already in the pool (dedup by Cut::key). Stops after the first
/// round that adds nothing. `model` must be a standard or 3LF build of `instance`.
CutLoopResult cutting_plane_loop(const Instance& instance, const MipModel& model, const LpSource& source,
                                 const CutConfig& config = {});

/// LP source that always returns the same point (replay/mock mode).
LpSource replay_source(VarValueMap point, std::optional<double> objective = std::nullopt);

/// LP source that shells out to an external solver. In `command_template`,
/// `{lp}` is replaced by the path of the relaxed LP file written for the
/// round and `{sol}` by the path the solver must write `<name> <value>` lines
/// to (an `obj <value>` line is optional). Returns nullopt when the command
/// fails or writes no solution.
LpSource command_source(std::string command_template, std::string work_dir);

}  // namespace lotforge

#endif
