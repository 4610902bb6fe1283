#include "lotforge/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lotforge/number_format.hpp"
#include "lotforge/rng.hpp"

namespace lotforge {

std::string facility_name(FacilityId id) {
    switch (id.kind) {
        case FacilityKind::Plant: return "p";
        case FacilityKind::Warehouse: return "w" + std::to_string(id.index);
        case FacilityKind::Retailer: return "r" + std::to_string(id.index);
    }
    return "?";
}

FacilityId Instance::facility_id(int flat) const {
    if (flat == 0) return {FacilityKind::Plant, 0};
    if (flat <= num_warehouses) return {FacilityKind::Warehouse, flat - 1};
    return {FacilityKind::Retailer, flat - 1 - num_warehouses};
}

int Instance::flat_index(FacilityId id) const {
    switch (id.kind) {
        case FacilityKind::Plant: return 0;
        case FacilityKind::Warehouse: return warehouse(id.index);
        case FacilityKind::Retailer: return retailer(id.index);
    }
    return -1;
}

int Instance::predecessor_at_level(int r, int b) const {
    switch (b) {
        case 0: return plant();
        case 1: return warehouse(retailer_warehouse[r]);
        default: return retailer(r);
    }
}

std::vector<int> Instance::retailers_of(int w) const {
    std::vector<int> out;
    for (int r = 0; r < num_retailers; ++r)
        if (retailer_warehouse[r] == w) out.push_back(r);
    return out;
}

std::vector<int> Instance::descendant_retailers(int flat) const {
    const FacilityId id = facility_id(flat);
    switch (id.kind) {
        case FacilityKind::Plant: {
            std::vector<int> all(num_retailers);
            for (int r = 0; r < num_retailers; ++r) all[r] = r;
            return all;
        }
        case FacilityKind::Warehouse: return retailers_of(id.index);
        case FacilityKind::Retailer: return {id.index};
    }
    return {};
}

std::vector<int> Instance::successors(int flat) const {
    const FacilityId id = facility_id(flat);
    std::vector<int> out;
    if (id.kind == FacilityKind::Plant) {
        for (int w = 0; w < num_warehouses; ++w) out.push_back(warehouse(w));
    } else if (id.kind == FacilityKind::Warehouse) {
        for (int r : retailers_of(id.index)) out.push_back(retailer(r));
    }
    return out;
}

std::vector<int> Instance::successors_at_level(int flat, int level) const {
    const FacilityId id = facility_id(flat);
    if (level <= level_of(id.kind)) return {};
    if (level == 1) return successors(flat);
    std::vector<int> out;
    for (int r : descendant_retailers(flat)) out.push_back(retailer(r));
    return out;
}

std::vector<std::string> validate(const Instance& in) {
    std::vector<std::string> v;
    if (in.num_periods < 1) v.push_back("num_periods must be >= 1");
    if (in.num_warehouses < 1) v.push_back("num_warehouses must be >= 1");
    if (in.num_retailers < 1) v.push_back("num_retailers must be >= 1");
    if (!v.empty()) return v;

    const auto T = static_cast<std::size_t>(in.num_periods);
    const auto R = static_cast<std::size_t>(in.num_retailers);
    const auto F = static_cast<std::size_t>(in.num_facilities());

    if (in.retailer_warehouse.size() != R) {
        v.push_back("retailer_warehouse has " + std::to_string(in.retailer_warehouse.size()) +
                    " entries, expected " + std::to_string(R));
    } else {
        for (std::size_t r = 0; r < R; ++r) {
            const int w = in.retailer_warehouse[r];
            if (w < 0 || w >= in.num_warehouses)
                v.push_back("retailer " + std::to_string(r) + " assigned to nonexistent warehouse " +
                            std::to_string(w));
        }
    }

    if (in.demand.rows() != R || in.demand.cols() != T) {
        v.push_back("demand matrix must be " + std::to_string(R) + "x" + std::to_string(T));
    } else {
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t t = 0; t < T; ++t)
                if (in.demand(r, t) < 0)
                    v.push_back("negative demand at retailer " + std::to_string(r) + ", period " +
                                std::to_string(t + 1));
    }

    auto check_costs = [&](const Matrix<double>& m, const char* what) {
        if (m.rows() != F || m.cols() != T) {
            v.push_back(std::string(what) + " matrix must be " + std::to_string(F) + "x" +
                        std::to_string(T));
            return;
        }
        for (std::size_t i = 0; i < F; ++i)
            for (std::size_t t = 0; t < T; ++t) {
                const double c = m(i, t);
                if (!std::isfinite(c) || c < 0.0)
                    v.push_back(std::string(what) + " at facility " +
                                facility_name(in.facility_id(static_cast<int>(i))) + ", period " +
                                std::to_string(t + 1) + " is not a finite nonnegative value");
            }
    };
    check_costs(in.setup_cost, "setup cost");
    check_costs(in.holding_cost, "holding cost");
    return v;
}

void require_valid(const Instance& instance) {
    const auto violations = validate(instance);
    if (violations.empty()) return;
    std::string msg = "invalid instance:";
    for (const auto& s : violations) msg += "\n  " + s;
    throw std::invalid_argument(msg);
}

CumulativeDemand::CumulativeDemand(const Instance& in)
    : num_facilities_(in.num_facilities()),
      num_periods_(in.num_periods),
      demand_(in.num_facilities(), in.num_periods, 0),
      prefix_(in.num_facilities(), in.num_periods + 1, 0) {
    for (int r = 0; r < in.num_retailers; ++r) {
        const int w = in.warehouse(in.retailer_warehouse[r]);
        for (int t = 0; t < in.num_periods; ++t) {
            const std::int64_t d = in.demand(r, t);
            demand_(in.retailer(r), t) = d;
            demand_(w, t) += d;
            demand_(Instance::plant(), t) += d;
        }
    }
    for (int i = 0; i < num_facilities_; ++i)
        for (int t = 0; t < num_periods_; ++t) prefix_(i, t + 1) = prefix_(i, t) + demand_(i, t);
}

CumulativeDemand cumulative_demand(const Instance& instance) { return CumulativeDemand(instance); }

// ---------------------------------------------------------------------------

std::string group_name(const InstanceSpec& s) {
    auto code = [](VariationType v) { return v == VariationType::Static ? "S" : "D"; };
    return std::to_string(s.num_retailers) + "_" + std::to_string(s.num_periods) + "_" +
           std::to_string(s.num_warehouses) + "_" + code(s.demand_type) + "_" + code(s.fixed_cost_type);
}

namespace {

// Splits `count` consecutive retailers starting at `first` over warehouses
// [w_begin, w_end); the first warehouse absorbs the remainder.
void split_evenly(std::vector<int>& assign, int first, int count, int w_begin, int w_end) {
    const int groups = w_end - w_begin;
    const int base = count / groups;
    const int extra = count % groups;
    int r = first;
    for (int w = w_begin; w < w_end; ++w) {
        const int n = base + (w == w_begin ? extra : 0);
        for (int j = 0; j < n; ++j) assign[r++] = w;
    }
}

}  // namespace

std::vector<int> assign_retailers(int num_retailers, int num_warehouses, NetworkShape shape) {
    std::vector<int> assign(num_retailers, 0);
    if (shape == NetworkShape::Balanced) {
        for (int r = 0; r < num_retailers; ++r) assign[r] = r % num_warehouses;
        return assign;
    }
    // ceil(0.2 W) warehouses take floor(0.8 R) retailers.
    const int heavy = (num_warehouses + 4) / 5;
    if (heavy >= num_warehouses) {
        split_evenly(assign, 0, num_retailers, 0, num_warehouses);
        return assign;
    }
    const int concentrated = (4 * num_retailers) / 5;
    split_evenly(assign, 0, concentrated, 0, heavy);
    split_evenly(assign, concentrated, num_retailers - concentrated, heavy, num_warehouses);
    return assign;
}

Instance generate(const InstanceSpec& spec) {
    if (spec.num_retailers < 1 || spec.num_warehouses < 1 || spec.num_periods < 1)
        throw std::invalid_argument("generate: counts must be positive");
    if (spec.num_warehouses > spec.num_retailers)
        throw std::invalid_argument("generate: more warehouses than retailers");

    Instance in;
    in.num_periods = spec.num_periods;
    in.num_warehouses = spec.num_warehouses;
    in.num_retailers = spec.num_retailers;
    in.retailer_warehouse = assign_retailers(spec.num_retailers, spec.num_warehouses, spec.network_shape);

    const int T = spec.num_periods;
    const int F = in.num_facilities();
    Rng rng(spec.seed);

    in.demand = Matrix<std::int64_t>(spec.num_retailers, T);
    for (int r = 0; r < spec.num_retailers; ++r) {
        if (spec.demand_type == VariationType::Static) {
            const auto d = rng.uniform_int(5, 100);
            for (int t = 0; t < T; ++t) in.demand(r, t) = d;
        } else {
            for (int t = 0; t < T; ++t) in.demand(r, t) = rng.uniform_int(5, 100);
        }
    }

    in.setup_cost = Matrix<double>(F, T);
    for (int i = 0; i < F; ++i) {
        std::int64_t lo = 5, hi = 100;
        if (i == Instance::plant()) {
            lo = 30000;
            hi = 45000;
        } else if (i <= spec.num_warehouses) {
            lo = 1500;
            hi = 4500;
        }
        if (spec.fixed_cost_type == VariationType::Static) {
            const auto c = static_cast<double>(rng.uniform_int(lo, hi));
            for (int t = 0; t < T; ++t) in.setup_cost(i, t) = c;
        } else {
            for (int t = 0; t < T; ++t) in.setup_cost(i, t) = static_cast<double>(rng.uniform_int(lo, hi));
        }
    }

    in.holding_cost = Matrix<double>(F, T);
    for (int t = 0; t < T; ++t) in.holding_cost(Instance::plant(), t) = 0.25;
    for (int w = 0; w < spec.num_warehouses; ++w)
        for (int t = 0; t < T; ++t) in.holding_cost(in.warehouse(w), t) = 0.5;
    for (int r = 0; r < spec.num_retailers; ++r) {
        const double h = rng.uniform_real(0.5, 1.0);
        for (int t = 0; t < T; ++t) in.holding_cost(in.retailer(r), t) = h;
    }
    return in;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

constexpr std::string_view kMagic = "3LSPD-U";

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

class Reader {
public:
    explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

    const Line& next(const std::string& expecting) {
        if (pos_ >= lines_.size())
            throw ParseError(last_line(), "unexpected end of file, expected " + expecting);
        return lines_[pos_++];
    }

    int keyed_int(const std::string& key) {
        const Line& l = next("'" + key + " <int>'");
        if (l.tokens.size() != 2 || l.tokens[0] != key)
            throw ParseError(l.number, "expected '" + key + " <int>'");
        const auto v = parse_integer(l.tokens[1]);
        if (!v || *v < 1) throw ParseError(l.number, key + " must be a positive integer");
        return static_cast<int>(*v);
    }

    void section(const std::string& name) {
        if (pos_ >= lines_.size()) throw ParseError(last_line(), "missing " + name + " section");
        const Line& l = lines_[pos_];
        if (l.tokens.size() != 1 || l.tokens[0] != name)
            throw ParseError(l.number, "missing " + name + " section (found '" + l.tokens[0] + "')");
        ++pos_;
    }

    bool done() const { return pos_ >= lines_.size(); }
    int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }
    int current_line() const { return pos_ < lines_.size() ? lines_[pos_].number : last_line(); }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

void read_cost_block(Reader& rd, const std::string& name, Matrix<double>& out, const Instance& in) {
    rd.section(name);
    const int F = in.num_facilities();
    out = Matrix<double>(F, in.num_periods);
    for (int i = 0; i < F; ++i) {
        const std::string row = name + " row " + std::to_string(i + 1) + " (" +
                                facility_name(in.facility_id(i)) + ")";
        const Line& l = rd.next(row);
        if (static_cast<int>(l.tokens.size()) != in.num_periods)
            throw ParseError(l.number, row + " has " + std::to_string(l.tokens.size()) +
                                           " values, expected T=" + std::to_string(in.num_periods));
        for (int t = 0; t < in.num_periods; ++t) {
            const auto v = parse_double(l.tokens[t]);
            if (!v) throw ParseError(l.number, row + ": bad number '" + l.tokens[t] + "'");
            out(i, t) = *v;
        }
    }
}

}  // namespace

Instance read_instance(std::string_view text) {
    Reader rd(tokenize(text));
    {
        const Line& l = rd.next("header");
        if (l.tokens.size() != 2 || l.tokens[0] != kMagic)
            throw ParseError(l.number, "expected header '3LSPD-U 1'");
        if (l.tokens[1] != "1") throw ParseError(l.number, "unsupported version " + l.tokens[1]);
    }
    Instance in;
    in.num_periods = rd.keyed_int("T");
    in.num_warehouses = rd.keyed_int("W");
    in.num_retailers = rd.keyed_int("R");

    rd.section("ASSIGN");
    in.retailer_warehouse.assign(in.num_retailers, -1);
    for (int j = 0; j < in.num_retailers; ++j) {
        const Line& l = rd.next("ASSIGN row " + std::to_string(j + 1));
        if (l.tokens.size() != 2) throw ParseError(l.number, "ASSIGN row must be '<retailer> <warehouse>'");
        const auto r = parse_integer(l.tokens[0]);
        const auto w = parse_integer(l.tokens[1]);
        if (!r || !w) throw ParseError(l.number, "ASSIGN row has a non-integer field");
        if (*r < 0 || *r >= in.num_retailers)
            throw ParseError(l.number, "ASSIGN retailer index " + l.tokens[0] + " out of range");
        if (*w < 0 || *w >= in.num_warehouses)
            throw ParseError(l.number, "ASSIGN warehouse index " + l.tokens[1] + " out of range");
        if (in.retailer_warehouse[*r] != -1)
            throw ParseError(l.number, "retailer " + l.tokens[0] + " assigned twice");
        in.retailer_warehouse[*r] = static_cast<int>(*w);
    }

    rd.section("DEMAND");
    in.demand = Matrix<std::int64_t>(in.num_retailers, in.num_periods);
    for (int r = 0; r < in.num_retailers; ++r) {
        const std::string row = "DEMAND row " + std::to_string(r + 1) + " (r" + std::to_string(r) + ")";
        const Line& l = rd.next(row);
        if (static_cast<int>(l.tokens.size()) != in.num_periods)
            throw ParseError(l.number, row + " has " + std::to_string(l.tokens.size()) +
                                           " values, expected T=" + std::to_string(in.num_periods));
        for (int t = 0; t < in.num_periods; ++t) {
            const auto v = parse_integer(l.tokens[t]);
            if (!v) throw ParseError(l.number, row + ": demand '" + l.tokens[t] + "' is not an integer");
            in.demand(r, t) = *v;
        }
    }

    read_cost_block(rd, "SETUP", in.setup_cost, in);
    read_cost_block(rd, "HOLD", in.holding_cost, in);
    if (!rd.done()) throw ParseError(rd.current_line(), "trailing content after HOLD section");
    return in;
}

std::string write_instance(const Instance& in) {
    std::string out;
    out += "3LSPD-U 1\n";
    out += "T " + std::to_string(in.num_periods) + "\n";
    out += "W " + std::to_string(in.num_warehouses) + "\n";
    out += "R " + std::to_string(in.num_retailers) + "\n";
    out += "ASSIGN\n";
    for (int r = 0; r < in.num_retailers; ++r)
        out += std::to_string(r) + " " + std::to_string(in.retailer_warehouse[r]) + "\n";
    out += "DEMAND\n";
    for (int r = 0; r < in.num_retailers; ++r) {
        for (int t = 0; t < in.num_periods; ++t) {
            if (t) out += ' ';
            out += std::to_string(in.demand(r, t));
        }
        out += '\n';
    }
    auto block = [&](const char* name, const Matrix<double>& m) {
        out += name;
        out += '\n';
        for (int i = 0; i < in.num_facilities(); ++i) {
            for (int t = 0; t < in.num_periods; ++t) {
                if (t) out += ' ';
                out += format_double(m(i, t));
            }
            out += '\n';
        }
    };
    block("SETUP", in.setup_cost);
    block("HOLD", in.holding_cost);
    return out;
}

Instance load_instance(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return read_instance(buf.str());
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << write_instance(instance);
    if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace lotforge
