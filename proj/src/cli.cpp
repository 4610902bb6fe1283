#include "lotforge/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lotforge/cut_loop.hpp"
#include "lotforge/formulations.hpp"
#include "lotforge/heuristic.hpp"
#include "lotforge/lp_format.hpp"
#include "lotforge/metrics.hpp"
#include "lotforge/number_format.hpp"
#include "lotforge/oracle.hpp"
#include "lotforge/preprocess.hpp"

namespace lotforge {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw IoError("cannot write " + path);
}

/// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
}

Instance load(const std::string& path) { return read_instance(read_file(path)); }

std::uint64_t default_seed() {
    if (const char* s = std::getenv("LOTFORGE_SEED")) {
        if (auto v = parse_integer(s); v && *v >= 0) return static_cast<std::uint64_t>(*v);
        throw UsageError("LOTFORGE_SEED must be a nonnegative integer");
    }
    return 1;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

// ---------------------------------------------------------------------------

struct GenArgs {
    InstanceSpec spec;
    std::string demand = "D";
    std::string fixed = "D";
    std::string shape = "balanced";
    std::string output;
};

VariationType variation(const std::string& s) {
    if (s == "D" || s == "d") return VariationType::Dynamic;
    if (s == "S" || s == "s") return VariationType::Static;
    throw UsageError("variation type must be D or S, got '" + s + "'");
}

int run_gen(GenArgs a, std::ostream& out) {
    a.spec.demand_type = variation(a.demand);
    a.spec.fixed_cost_type = variation(a.fixed);
    if (a.shape == "balanced")
        a.spec.network_shape = NetworkShape::Balanced;
    else if (a.shape == "unbalanced")
        a.spec.network_shape = NetworkShape::Unbalanced;
    else
        throw UsageError("shape must be balanced or unbalanced");
    Instance in;
    try {
        in = generate(a.spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::string text = "# group=" + group_name(a.spec) + " shape=" + a.shape +
                       " seed=" + std::to_string(a.spec.seed) + "\n" + write_instance(in);
    emit(a.output, text, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct HeurArgs {
    std::string instance;
    HeuristicConfig config;
    std::string solution_out;
    std::string log_out;
    std::string report_out;
    std::optional<double> bstar;
    bool timing = false;
};

std::string heur_report(const std::string& id, const HeuristicConfig& c, const HeuristicResult& r,
                        const std::optional<double>& bstar, bool timing) {
    std::string s = "instance,best,best_iteration,iterations,alpha,seed,bstar,gap_bstar,time\n";
    s += id + ',' + format_double(r.best_cost) + ',' + std::to_string(r.best_iteration + 1) + ',' +
         std::to_string(c.iterations) + ',' + format_double(c.alpha) + ',' + std::to_string(c.seed) + ',' +
         opt_number(bstar) + ',' + opt_number(bstar ? std::optional(gap_bstar(r.best_cost, *bstar)) : std::nullopt) +
         ',' + (timing ? format_double(r.wall_time) : "") + '\n';
    return s;
}

int run_heur(const HeurArgs& a, std::ostream& out) {
    const Instance in = load(a.instance);
    HeuristicResult r;
    try {
        r = run(in, a.config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!a.solution_out.empty()) write_file(a.solution_out, solution_to_csv(in, r.best));
    if (!a.log_out.empty()) write_file(a.log_out, iteration_log_jsonl(r));
    emit(a.report_out, heur_report(fs::path(a.instance).stem().string(), a.config, r, a.bstar, a.timing), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct PreArgs {
    std::string instance;
    std::string lp_out;
    std::string report_out;
};

int run_pre(const PreArgs& a, std::ostream& out) {
    const Instance in = load(a.instance);
    const RemovalSet rem = compute_removals(in);
    if (!a.lp_out.empty()) write_file(a.lp_out, export_lp(apply_removals(build_mc(in), rem)));
    emit(a.report_out, removal_report_csv(rem), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExportArgs {
    std::string instance;
    std::string formulation = "std";
    std::string output;
    bool relax = false;
    bool cuts = false;
    std::string point;
    std::string solver_cmd;
    std::string work_dir;
    std::string mst;
    CutConfig cut_config;
};

int run_export(ExportArgs a, std::ostream& out, std::ostream& err) {
    const Instance in = load(a.instance);
    MipModel model;
    if (a.formulation == "std")
        model = build_std(in);
    else if (a.formulation == "mc")
        model = build_mc(in);
    else if (a.formulation == "3lf")
        model = build_3lf(in);
    else
        throw UsageError("formulation must be std, mc or 3lf");

    if (a.cuts) {
        if (a.formulation == "mc") throw UsageError("--cuts applies to the std and 3lf formulations");
        if (a.solver_cmd.empty())
            if (const char* env = std::getenv("LOTFORGE_LP_SOLVER_CMD")) a.solver_cmd = env;
        LpSource source;
        if (!a.point.empty()) {
            std::optional<double> obj;
            VarValueMap values = parse_point_text(read_file(a.point), &obj);
            source = replay_source(std::move(values), obj);
        } else if (!a.solver_cmd.empty()) {
            const std::string dir =
                a.work_dir.empty() ? (fs::temp_directory_path() / "lotforge_cuts").string() : a.work_dir;
            source = command_source(a.solver_cmd, dir);
        } else {
            throw UsageError("--cuts needs --point or --lp-solver-cmd");
        }
        const CutLoopResult res = cutting_plane_loop(in, model, source, a.cut_config);
        if (res.status == LoopStatus::SourceUnavailable && res.rounds == 0)
            throw IoError("LP source returned no solution");
        err << "cut rounds: " << res.rounds << ", cuts: " << res.pool.size();
        if (res.final_objective) err << ", last objective: " << format_double(*res.final_objective);
        err << '\n';
        model = with_cuts(model, res.pool);
    }
    emit(a.output, export_lp(model, {.relax = a.relax}), out);
    if (!a.mst.empty()) {
        const HeuristicResult h = run(in, HeuristicConfig{});
        write_file(a.mst, mip_start_text(in, h.best));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    std::string instance;
    OracleConfig config;
    std::string solution_out;
};

int run_oracle(const OracleArgs& a, std::ostream& out) {
    const Instance in = load(a.instance);
    const OracleResult r = solve_exact(in, a.config);
    out << "optimum," << format_double(r.cost) << '\n';
    emit(a.solution_out, solution_to_csv(in, r.solution), out);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string directory;
    HeuristicConfig config;
    int jobs = 1;
    bool markdown = false;
    bool timing = false;
    int oracle_bits = 0;
    std::string bounds;
    std::string output;
};

std::string group_of(const std::string& text, const Instance& in) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("# group=", 0) != 0) continue;
        const std::string rest = line.substr(8);
        return rest.substr(0, rest.find(' '));
    }
    return std::to_string(in.num_retailers) + '_' + std::to_string(in.num_periods) + '_' +
           std::to_string(in.num_warehouses);
}

std::map<std::string, double> read_bounds(const std::string& path) {
    std::map<std::string, double> out;
    std::istringstream lines(read_file(path));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        ++n;
        if (line.empty() || line.rfind("instance,", 0) == 0) continue;
        const auto comma = line.find(',');
        const auto v = comma == std::string::npos ? std::nullopt : parse_double(line.substr(comma + 1));
        if (!v) throw IoError(path + ": bad bound on line " + std::to_string(n));
        out[line.substr(0, comma)] = *v;
    }
    return out;
}

std::string bench_csv(const std::vector<RunReport>& rows, bool timing) {
    std::string s = "instance,group,best,bstar,gap_bstar,time\n";
    for (const RunReport& r : rows)
        s += r.instance + ',' + r.group + ',' + format_double(r.best) + ',' + opt_number(r.bstar) + ',' +
             opt_number(r.gap_bstar) + ',' + (timing ? opt_number(r.wall_time) : "") + '\n';
    return s;
}

std::string fixed(double v, int digits) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(digits);
    o << v;
    return o.str();
}

std::string bench_markdown(const std::vector<RunReport>& rows, bool timing) {
    struct Agg {
        int n = 0;
        double best = 0.0;
        double gap = 0.0;
        int gaps = 0;
        double time = 0.0;
    };
    std::map<std::string, Agg> groups;
    for (const RunReport& r : rows) {
        Agg& g = groups[r.group];
        ++g.n;
        g.best += r.best;
        if (r.gap_bstar) {
            g.gap += *r.gap_bstar;
            ++g.gaps;
        }
        if (r.wall_time) g.time += *r.wall_time;
    }
    std::string s = "| group | instances | avg best | avg gap_b* (%) |";
    s += timing ? " avg time (s) |\n|---|---:|---:|---:|---:|\n" : "\n|---|---:|---:|---:|\n";
    for (const auto& [name, g] : groups) {
        s += "| " + name + " | " + std::to_string(g.n) + " | " + fixed(g.best / g.n, 2) + " | " +
             (g.gaps ? fixed(g.gap / g.gaps, 2) : "-") + " |";
        if (timing) s += ' ' + fixed(g.time / g.n, 3) + " |";
        s += '\n';
    }
    return s;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
    if (!fs::is_directory(a.directory)) throw IoError(a.directory + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.directory))
        if (entry.is_regular_file() && entry.path().extension() == ".inst") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    const std::map<std::string, double> bounds = a.bounds.empty() ? std::map<std::string, double>{} : read_bounds(a.bounds);

    // Parse everything up front so that errors surface before any work starts.
    std::vector<Instance> instances;
    std::vector<std::string> groups;
    for (const fs::path& f : files) {
        const std::string text = read_file(f.string());
        try {
            instances.push_back(read_instance(text));
        } catch (const ParseError& e) {
            throw ParseError(e.line(), f.filename().string() + ": " + e.what());
        }
        groups.push_back(group_of(text, instances.back()));
    }

    std::vector<RunReport> rows(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
            const Instance& in = instances[i];
            RunReport& r = rows[i];
            r.instance = files[i].stem().string();
            r.group = groups[i];
            const HeuristicResult h = run(in, a.config);
            r.best = h.best_cost;
            r.method_costs["heuristic"] = h.best_cost;
            r.wall_time = h.wall_time;
            if (auto it = bounds.find(r.instance); it != bounds.end()) r.bstar = it->second;
            if (!r.bstar && a.oracle_bits > 0 &&
                static_cast<long long>(in.num_facilities()) * in.num_periods <= a.oracle_bits)
            {
                OracleConfig oc;
                oc.max_setup_bits = a.oracle_bits;
                r.bstar = solve_exact(in, oc).cost;
            }
            if (r.bstar) r.gap_bstar = gap_bstar(r.best, *r.bstar);
        }
    };
    const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(files.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    emit(a.output, a.markdown ? bench_markdown(rows, a.timing) : bench_csv(rows, a.timing), out);
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lotforge: three-level lot-sizing toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "lotforge 1.0");

    std::uint64_t seed_default = 1;
    try {
        seed_default = default_seed();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    GenArgs gen;
    gen.spec.seed = seed_default;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark instance");
    gen_cmd->add_option("--retailers", gen.spec.num_retailers, "Number of retailers")->capture_default_str();
    gen_cmd->add_option("--periods", gen.spec.num_periods, "Number of periods")->capture_default_str();
    gen_cmd->add_option("--warehouses", gen.spec.num_warehouses, "Number of warehouses")->capture_default_str();
    gen_cmd->add_option("--demand", gen.demand, "Demand variation, D or S")->capture_default_str();
    gen_cmd->add_option("--fixed", gen.fixed, "Setup cost variation, D or S")->capture_default_str();
    gen_cmd->add_option("--shape", gen.shape, "balanced or unbalanced")->capture_default_str();
    gen_cmd->add_option("--seed", gen.spec.seed, "Seed (default: LOTFORGE_SEED or 1)");
    gen_cmd->add_option("-o,--output", gen.output, "Output file (default: stdout)");

    HeurArgs heur;
    heur.config.seed = seed_default;
    auto* heur_cmd = app.add_subcommand("heur", "Run the multi-start randomized bottom-up DP heuristic");
    heur_cmd->add_option("instance", heur.instance, "Instance file")->required();
    heur_cmd->add_option("--alpha", heur.config.alpha, "Setup cost perturbation")->capture_default_str();
    heur_cmd->add_option("--iters", heur.config.iterations, "Iterations")->capture_default_str();
    heur_cmd->add_option("--seed", heur.config.seed, "Seed (default: LOTFORGE_SEED or 1)");
    heur_cmd->add_flag("--parallel", heur.config.parallel, "Run iterations with OpenMP");
    heur_cmd->add_option("--solution", heur.solution_out, "Write the best solution as CSV");
    heur_cmd->add_option("--log", heur.log_out, "Write the iteration log as JSON lines");
    heur_cmd->add_option("--report", heur.report_out, "Report file (default: stdout)");
    heur_cmd->add_option("--bstar", heur.bstar, "Best known bound for gap_bstar");
    heur_cmd->add_flag("--timing", heur.timing, "Fill the time column");

    PreArgs pre;
    auto* pre_cmd = app.add_subcommand("pre", "Cost-based MC variable elimination");
    pre_cmd->add_option("instance", pre.instance, "Instance file")->required();
    pre_cmd->add_option("--lp", pre.lp_out, "Write the reduced MC model as an LP file");
    pre_cmd->add_option("--report", pre.report_out, "Report file (default: stdout)");

    ExportArgs exp;
    auto* exp_cmd = app.add_subcommand("export", "Write a formulation as an LP file");
    exp_cmd->add_option("instance", exp.instance, "Instance file")->required();
    exp_cmd->add_option("--formulation", exp.formulation, "std, mc or 3lf")
        ->check(CLI::IsMember({"std", "mc", "3lf"}))
        ->capture_default_str();
    exp_cmd->add_option("-o,--output", exp.output, "Output file (default: stdout)");
    exp_cmd->add_flag("--relax", exp.relax, "Omit the Binaries section");
    exp_cmd->add_flag("--cuts", exp.cuts, "Run the cutting-plane loop and append its cuts");
    exp_cmd->add_option("--point", exp.point, "Replay this `<var> <value>` point as every LP solution");
    exp_cmd->add_option("--lp-solver-cmd", exp.solver_cmd,
                        "External LP solver command; {lp} and {sol} are replaced by file paths "
                        "(default: LOTFORGE_LP_SOLVER_CMD)");
    exp_cmd->add_option("--work-dir", exp.work_dir, "Directory for the solver's round files");
    exp_cmd->add_option("--rounds", exp.cut_config.max_rounds, "Maximum cut rounds")->capture_default_str();
    exp_cmd->add_option("--tol", exp.cut_config.violation_tol, "Violation tolerance")->capture_default_str();
    exp_cmd->add_option("--mst", exp.mst, "Write the heuristic solution as a MIP start");

    OracleArgs orc;
    auto* orc_cmd = app.add_subcommand("oracle", "Exact optimum of a tiny instance by enumeration");
    orc_cmd->add_option("instance", orc.instance, "Instance file")->required();
    orc_cmd->add_option("--max-bits", orc.config.max_setup_bits, "Setup variable guard")->capture_default_str();
    orc_cmd->add_flag("--parallel", orc.config.parallel, "Enumerate with OpenMP");
    orc_cmd->add_option("--solution", orc.solution_out, "Witness CSV file (default: stdout)");

    BenchArgs bench;
    bench.config.seed = seed_default;
    auto* bench_cmd = app.add_subcommand("bench", "Run the heuristic over a directory of .inst files");
    bench_cmd->add_option("directory", bench.directory, "Instance directory")->required();
    bench_cmd->add_option("--alpha", bench.config.alpha, "Setup cost perturbation")->capture_default_str();
    bench_cmd->add_option("--iters", bench.config.iterations, "Iterations")->capture_default_str();
    bench_cmd->add_option("--seed", bench.config.seed, "Seed (default: LOTFORGE_SEED or 1)");
    bench_cmd->add_option("--jobs", bench.jobs, "Instances run concurrently")->capture_default_str();
    bench_cmd->add_flag("--markdown", bench.markdown, "Grouped markdown table instead of CSV");
    bench_cmd->add_flag("--timing", bench.timing, "Fill the time column");
    bench_cmd->add_option("--oracle-bits", bench.oracle_bits, "Use the oracle optimum as b* up to this many setup bits");
    bench_cmd->add_option("--bounds", bench.bounds, "CSV `instance,bstar` of best known bounds");
    bench_cmd->add_option("-o,--output", bench.output, "Output file (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen, out);
        if (*heur_cmd) return run_heur(heur, out);
        if (*pre_cmd) return run_pre(pre, out);
        if (*exp_cmd) return run_export(exp, out, err);
        if (*orc_cmd) return run_oracle(orc, out);
        if (*bench_cmd) return run_bench(bench, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SizeGuardError& e) {
        err << "error: " << e.what() << '\n';
        return kExitSizeGuard;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const LpParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace lotforge
