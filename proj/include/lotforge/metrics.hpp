#ifndef LOTFORGE_METRICS_HPP
#define LOTFORGE_METRICS_HPP

#include <map>
#include <optional>
#include <string>

namespace lotforge {

/// Solver gap in percent: 100 * (bestsol - bestbound) / bestsol.
inline double gap(double bestsol, double bestbound) { return 100.0 * (bestsol - bestbound) / bestsol; }

/// Gap to the best known bound b* in percent: 100 * (best - b*) / b*.
inline double gap_bstar(double best, double bstar) { return 100.0 * (best - bstar) / bstar; }

/// Reduction in percent: 100 * removed / candidates.
inline double reduction(double removed, double candidates) {
    return candidates == 0.0 ? 0.0 : 100.0 * removed / candidates;
}

struct RunReport {
    std::string instance;
    std::string group;
    double best = 0.0;
    std::map<std::string, double> method_costs;
    std::optional<double> bstar;
    std::optional<double> gap;
    std::optional<double> gap_bstar;
    std::optional<double> red;
    std::optional<double> wall_time;  // seconds
};

}  // namespace lotforge

#endif
