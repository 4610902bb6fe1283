#include "lotforge/cut_loop.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lotforge/lp_format.hpp"

namespace lotforge {

MipModel with_cuts(const MipModel& model, const std::vector<Cut>& cuts) {
    MipModel out = model;
    int n = 0;
    for (const Cut& c : cuts)
        out.add_constraint({"cut_" + family_tag(c.family) + "_" + std::to_string(++n), c.lhs, Sense::Ge, c.rhs});
    return out;
}

CutLoopResult cutting_plane_loop(const Instance& instance, const MipModel& model, const LpSource& source,
                                 const CutConfig& config) {
    if (model.kind != FormulationKind::Std && model.kind != FormulationKind::ThreeLevel)
        throw std::invalid_argument("cutting_plane_loop: model must be a standard or 3LF formulation");
    if (model.num_periods != instance.num_periods || model.num_retailers != instance.num_retailers ||
        model.num_warehouses != instance.num_warehouses)
        throw std::invalid_argument("cutting_plane_loop: model was built for a different instance");
    if (config.two_level_every < 1 || config.three_level_every < 1 || config.max_rounds < 0)
        throw std::invalid_argument("cutting_plane_loop: invalid schedule");

    const bool std_space = model.kind == FormulationKind::Std;
    CutLoopResult res;
    std::set<std::string> keys;
    res.status = config.max_rounds == 0 ? LoopStatus::Converged : LoopStatus::RoundLimit;

    for (int round = 1; round <= config.max_rounds; ++round) {
        const std::optional<LpResult> lp = source(with_cuts(model, res.pool));
        if (!lp) {
            res.status = LoopStatus::SourceUnavailable;
            break;
        }
        res.final_objective = lp->objective;
        res.round_objectives.push_back(lp->objective);

        std::vector<Cut> found;
        auto take = [&found](std::vector<Cut> cuts) {
            for (Cut& c : cuts) found.push_back(std::move(c));
        };
        const double tol = config.violation_tol;
        if (std_space) {
            take(separate_single_level_std(instance, lp->values, tol));
            if (round % config.two_level_every == 0) take(separate_two_level_std(instance, lp->values, tol));
            if (round % config.three_level_every == 0) take(separate_three_level_std(instance, lp->values, tol));
        } else {
            take(separate_single_level_3lf(instance, lp->values, tol));
            if (round % config.two_level_every == 0) take(separate_two_level_3lf(instance, lp->values, tol));
            if (round % config.three_level_every == 0) take(separate_three_level_3lf(instance, lp->values, tol));
        }

        int added = 0;
        for (Cut& c : found) {
            if (!keys.insert(c.key()).second) continue;
            res.pool.push_back(std::move(c));
            ++added;
        }
        res.rounds = round;
        res.cuts_per_round.push_back(added);
        if (added == 0) {
            res.status = LoopStatus::Converged;
            break;
        }
    }
    return res;
}

LpSource replay_source(VarValueMap point, std::optional<double> objective) {
    return [point = std::move(point), objective](const MipModel&) -> std::optional<LpResult> {
        return LpResult{point, objective};
    };
}

namespace {

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
    return s;
}

}  // namespace

LpSource command_source(std::string command_template, std::string work_dir) {
    return [tmpl = std::move(command_template), dir = std::move(work_dir),
            counter = std::make_shared<int>(0)](const MipModel& model) -> std::optional<LpResult> {
        namespace fs = std::filesystem;
        fs::create_directories(dir);
        const int n = ++*counter;
        const fs::path lp = fs::path(dir) / ("round" + std::to_string(n) + ".lp");
        const fs::path sol = fs::path(dir) / ("round" + std::to_string(n) + ".sol");
        {
            std::ofstream out(lp);
            out << export_lp(model, {.relax = true});
            if (!out) return std::nullopt;
        }
        fs::remove(sol);
        const std::string cmd = replace_all(replace_all(tmpl, "{lp}", lp.string()), "{sol}", sol.string());
        if (std::system(cmd.c_str()) != 0) return std::nullopt;
        std::ifstream in(sol);
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        LpResult res;
        try {
            res.values = parse_point_text(buf.str(), &res.objective);
        } catch (const std::exception&) {
            return std::nullopt;
        }
        return res;
    };
}

}  // namespace lotforge
