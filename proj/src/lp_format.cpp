#include "lotforge/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "lotforge/formulations.hpp"
#include "lotforge/number_format.hpp"

namespace lotforge {

namespace {

constexpr int kTermsPerLine = 6;

const char* kind_tag(FormulationKind k) {
    switch (k) {
        case FormulationKind::Std: return "std";
        case FormulationKind::Mc: return "mc";
        case FormulationKind::ThreeLevel: return "3lf";
        case FormulationKind::Other: return "other";
    }
    return "other";
}

FormulationKind kind_from_tag(std::string_view s) {
    if (s == "std") return FormulationKind::Std;
    if (s == "mc") return FormulationKind::Mc;
    if (s == "3lf") return FormulationKind::ThreeLevel;
    return FormulationKind::Other;
}

void write_expr(std::string& out, const LinearExpr& e) {
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (j > 0 && j % kTermsPerLine == 0) out += "\n  ";
        const double c = e[j].coef;
        const bool negative = std::signbit(c) && c != 0.0;
        if (j == 0) {
            if (negative) out += "- ";
        } else {
            out += negative ? " - " : " + ";
        }
        out += format_double(std::abs(c));
        out += ' ';
        out += var_name(e[j].var);
    }
}

std::string bound_text(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return format_double(v);
}

}  // namespace

std::string export_lp(const MipModel& model, const LpExportOptions& options) {
    std::string out;
    out += "\\ lotforge model kind=" + std::string(kind_tag(model.kind)) +
           " periods=" + std::to_string(model.num_periods) + " warehouses=" + std::to_string(model.num_warehouses) +
           " retailers=" + std::to_string(model.num_retailers) + "\n";
    out += "Minimize\n obj: ";
    write_expr(out, model.objective());
    out += "\nSubject To\n";
    for (const Constraint& c : model.constraints()) {
        out += ' ' + c.name + ": ";
        write_expr(out, c.expr);
        switch (c.sense) {
            case Sense::Le: out += " <= "; break;
            case Sense::Ge: out += " >= "; break;
            case Sense::Eq: out += " = "; break;
        }
        out += format_double(c.rhs);
        out += '\n';
    }
    out += "Bounds\n";
    for (const Variable& v : model.variables())
        out += ' ' + bound_text(v.lb) + " <= " + var_name(v.id) + " <= " + bound_text(v.ub) + '\n';
    if (!options.relax) {
        bool any = false;
        for (const Variable& v : model.variables()) {
            if (!v.binary) continue;
            if (!any) out += "Binaries\n";
            any = true;
            out += ' ' + var_name(v.id) + '\n';
        }
    }
    out += "End\n";
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Token {
    std::string text;
    int line;
};

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::optional<Section> section_keyword(std::string_view line) {
    std::string l = lower(line);
    // collapse whitespace
    std::istringstream in(l);
    std::string word, joined;
    while (in >> word) joined += (joined.empty() ? "" : " ") + word;
    if (joined == "minimize" || joined == "minimise" || joined == "min") return Section::Objective;
    if (joined == "subject to" || joined == "such that" || joined == "st" || joined == "s.t.")
        return Section::Constraints;
    if (joined == "bounds" || joined == "bound") return Section::Bounds;
    if (joined == "binaries" || joined == "binary" || joined == "bin") return Section::Binaries;
    if (joined == "generals" || joined == "general" || joined == "gen") return Section::Generals;
    if (joined == "end") return Section::End;
    return std::nullopt;
}

bool is_sense(std::string_view s) {
    return s == "<=" || s == ">=" || s == "=" || s == "=<" || s == "=>" || s == "<" || s == ">";
}

Sense to_sense(std::string_view s) {
    if (s == "<=" || s == "=<" || s == "<") return Sense::Le;
    if (s == ">=" || s == "=>" || s == ">") return Sense::Ge;
    return Sense::Eq;
}

// Splits operators glued to operands ("x<=3") into separate tokens.
void push_tokens(std::vector<Token>& out, std::string_view line, int number) {
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back({cur, number});
        cur.clear();
    };
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (c == '<' || c == '>' || c == '=') {
            flush();
            std::string op(1, c);
            if (i + 1 < line.size() && (line[i + 1] == '=' || line[i + 1] == '<' || line[i + 1] == '>')) op += line[++i];
            out.push_back({op, number});
        } else if ((c == '+' || c == '-') && cur.empty()) {
            // sign token unless it starts a number like "-inf" or "-3"
            if (i + 1 < line.size() && !std::isspace(static_cast<unsigned char>(line[i + 1])) &&
                (std::isdigit(static_cast<unsigned char>(line[i + 1])) || line[i + 1] == '.' || line[i + 1] == 'i' ||
                 line[i + 1] == 'I')) {
                cur += c;
            } else {
                out.push_back({std::string(1, c), number});
            }
        } else if (c == ':') {
            cur += c;
            flush();
        } else {
            cur += c;
        }
    }
    flush();
}

struct RawExpr {
    std::vector<std::pair<std::string, double>> terms;
    std::vector<int> lines;
};

class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, std::size_t& pos) : toks_(toks), pos_(pos) {}

    // Parses terms until a sense token or the end of the token list.
    RawExpr parse() {
        RawExpr e;
        while (pos_ < toks_.size() && !is_sense(toks_[pos_].text)) {
            if (ends_label(toks_[pos_].text))
                throw LpParseError(toks_[pos_].line, "unexpected label '" + toks_[pos_].text + "'");
            double sign = 1.0;
            while (pos_ < toks_.size() && (toks_[pos_].text == "+" || toks_[pos_].text == "-")) {
                if (toks_[pos_].text == "-") sign = -sign;
                ++pos_;
            }
            if (pos_ >= toks_.size()) throw LpParseError(toks_.back().line, "dangling sign");
            double coef = 1.0;
            if (auto num = parse_double(toks_[pos_].text)) {
                coef = *num;
                ++pos_;
                if (pos_ >= toks_.size() || is_sense(toks_[pos_].text))
                    throw LpParseError(toks_[pos_ - 1].line, "constant terms are not supported");
            }
            const Token& var = toks_[pos_++];
            e.terms.emplace_back(var.text, sign * coef);
            e.lines.push_back(var.line);
        }
        return e;
    }

    static bool ends_label(const std::string& s) { return !s.empty() && s.back() == ':'; }

private:
    const std::vector<Token>& toks_;
    std::size_t& pos_;
};

struct RawConstraint {
    std::string name;
    RawExpr expr;
    Sense sense;
    double rhs;
};

struct RawBound {
    std::string name;
    std::optional<double> lb, ub;
    int line;
};

}  // namespace

MipModel parse_lp(std::string_view text) {
    MipModel model;
    Section section = Section::None;
    std::vector<Token> obj_toks, row_toks;
    std::vector<RawBound> bounds;
    std::vector<std::pair<std::string, int>> binaries;
    bool saw_objective = false;

    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++number;
        pos = end + 1;

        if (const auto bs = line.find('\\'); bs != std::string_view::npos) {
            std::string_view comment = line.substr(bs + 1);
            if (comment.find("lotforge model") != std::string_view::npos) {
                std::istringstream in{std::string(comment)};
                for (std::string kv; in >> kv;) {
                    const auto eq = kv.find('=');
                    if (eq == std::string::npos) continue;
                    const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                    if (key == "kind") model.kind = kind_from_tag(val);
                    auto iv = parse_integer(val);
                    if (key == "periods" && iv) model.num_periods = static_cast<int>(*iv);
                    if (key == "warehouses" && iv) model.num_warehouses = static_cast<int>(*iv);
                    if (key == "retailers" && iv) model.num_retailers = static_cast<int>(*iv);
                }
            }
            line = line.substr(0, bs);
        }
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        if (auto kw = section_keyword(line)) {
            section = *kw;
            if (section == Section::Objective) saw_objective = true;
            if (section == Section::End) break;
            continue;
        }
        switch (section) {
            case Section::None: throw LpParseError(number, "content before the objective section");
            case Section::Objective: push_tokens(obj_toks, line, number); break;
            case Section::Constraints: push_tokens(row_toks, line, number); break;
            case Section::Bounds: {
                std::vector<Token> t;
                push_tokens(t, line, number);
                RawBound b{"", std::nullopt, std::nullopt, number};
                auto num = [&](std::size_t i) {
                    auto v = parse_double(t[i].text);
                    if (!v) throw LpParseError(number, "bad bound value '" + t[i].text + "'");
                    return *v;
                };
                if (t.size() == 5 && is_sense(t[1].text) && is_sense(t[3].text)) {
                    b.name = t[2].text;
                    b.lb = num(0);
                    b.ub = num(4);
                } else if (t.size() == 3 && is_sense(t[1].text)) {
                    if (parse_double(t[0].text)) {  // "3 <= x"
                        b.name = t[2].text;
                        const double v = num(0);
                        const Sense s = to_sense(t[1].text);
                        if (s == Sense::Le) b.lb = v;
                        else if (s == Sense::Ge) b.ub = v;
                        else b.lb = b.ub = v;
                    } else {
                        b.name = t[0].text;
                        const double v = num(2);
                        const Sense s = to_sense(t[1].text);
                        if (s == Sense::Le) b.ub = v;
                        else if (s == Sense::Ge) b.lb = v;
                        else b.lb = b.ub = v;
                    }
                } else if (t.size() == 2 && lower(t[1].text) == "free") {
                    b.name = t[0].text;
                    b.lb = -std::numeric_limits<double>::infinity();
                    b.ub = std::numeric_limits<double>::infinity();
                } else {
                    throw LpParseError(number, "unrecognized bound line");
                }
                bounds.push_back(b);
                break;
            }
            case Section::Binaries: {
                std::istringstream in{std::string(line)};
                for (std::string name; in >> name;) binaries.emplace_back(name, number);
                break;
            }
            case Section::Generals: throw LpParseError(number, "general integer variables are not supported");
            case Section::End: break;
        }
        if (end == text.size()) break;
    }
    if (!saw_objective) throw LpParseError(number, "missing Minimize section");

    // Objective
    RawExpr obj;
    {
        std::size_t p = 0;
        if (!obj_toks.empty() && ExprParser::ends_label(obj_toks[0].text)) ++p;
        obj = ExprParser(obj_toks, p).parse();
        if (p != obj_toks.size()) throw LpParseError(obj_toks[p].line, "unexpected sense in objective");
    }
    // Rows
    std::vector<RawConstraint> rows;
    {
        std::size_t p = 0;
        while (p < row_toks.size()) {
            const Token& label = row_toks[p];
            if (!ExprParser::ends_label(label.text)) throw LpParseError(label.line, "constraint without a name");
            ++p;
            RawConstraint c;
            c.name = label.text.substr(0, label.text.size() - 1);
            c.expr = ExprParser(row_toks, p).parse();
            if (p >= row_toks.size()) throw LpParseError(label.line, "constraint '" + c.name + "' has no sense");
            c.sense = to_sense(row_toks[p].text);
            ++p;
            double sign = 1.0;
            if (p < row_toks.size() && (row_toks[p].text == "-" || row_toks[p].text == "+")) {
                if (row_toks[p].text == "-") sign = -1.0;
                ++p;
            }
            if (p >= row_toks.size()) throw LpParseError(label.line, "constraint '" + c.name + "' has no right-hand side");
            auto rhs = parse_double(row_toks[p].text);
            if (!rhs) throw LpParseError(row_toks[p].line, "bad right-hand side '" + row_toks[p].text + "'");
            c.rhs = sign * *rhs;
            ++p;
            rows.push_back(std::move(c));
        }
    }

    // Declare variables: Bounds order first, then first appearance.
    auto resolve = [](const std::string& name, int line) {
        auto id = parse_var_name(name);
        if (!id) throw LpParseError(line, "unrecognized variable name '" + name + "'");
        return *id;
    };
    std::set<std::string> binary_names;
    for (const auto& [name, line] : binaries) {
        resolve(name, line);
        binary_names.insert(name);
    }
    auto declare = [&](const std::string& name, int line) {
        const VarId id = resolve(name, line);
        if (model.has_variable(id)) return;
        Variable v{id, 0.0, std::numeric_limits<double>::infinity(), binary_names.count(name) != 0};
        if (v.binary) v.ub = 1.0;
        model.add_variable(v);
    };
    for (const RawBound& b : bounds) {
        declare(b.name, b.line);
        Variable& v = model.variable(resolve(b.name, b.line));
        if (b.lb) v.lb = *b.lb;
        if (b.ub) v.ub = *b.ub;
    }
    auto to_expr = [&](const RawExpr& raw) {
        LinearExpr e;
        for (std::size_t j = 0; j < raw.terms.size(); ++j) {
            declare(raw.terms[j].first, raw.lines[j]);
            e.push_back({resolve(raw.terms[j].first, raw.lines[j]), raw.terms[j].second});
        }
        return e;
    };
    model.set_objective(to_expr(obj));
    for (RawConstraint& c : rows) model.add_constraint({c.name, to_expr(c.expr), c.sense, c.rhs});
    for (const auto& [name, line] : binaries) declare(name, line);
    return model;
}

std::string mip_start_text(const Instance& instance, const Solution& solution) {
    const VarValueMap values = std_point(instance, solution);
    const MipModel layout = build_std(instance);
    std::string out;
    for (const Variable& v : layout.variables()) out += var_name(v.id) + ' ' + format_double(values.at(v.id)) + '\n';
    return out;
}

VarValueMap parse_point_text(std::string_view text, std::optional<double>* objective) {
    VarValueMap out;
    std::istringstream in{std::string(text)};
    int number = 0;
    for (std::string line; std::getline(in, line);) {
        ++number;
        std::istringstream ls(line);
        std::string name, value;
        if (!(ls >> name) || name[0] == '#' || name[0] == '\\') continue;
        if (!(ls >> value)) throw LpParseError(number, "expected '<name> <value>'");
        const auto v = parse_double(value);
        if (!v) throw LpParseError(number, "bad value '" + value + "'");
        const std::string lname = lower(name);
        if (lname == "obj" || lname == "objective" || lname == "obj:") {
            if (objective) *objective = *v;
            continue;
        }
        const auto id = parse_var_name(name);
        if (!id) throw LpParseError(number, "unrecognized variable name '" + name + "'");
        out[*id] = *v;
    }
    return out;
}

}  // namespace lotforge
