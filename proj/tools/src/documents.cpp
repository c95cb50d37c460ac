#include "binomial/cli/documents.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include <nlohmann/json.hpp>

namespace binomial::cli {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_decimal(std::string_view text, const std::string& where) {
    const std::string t = trim(text);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw InputError(where, "'" + t + "' is not a number");
    }
    return value;
}

// Shortest text that reads back to the same double.
std::string num(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

json parse_json(std::string_view text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(source + ":" + std::to_string(line_of(text, e.byte)),
                         "malformed document (" + std::string(e.what()) + ")");
    }
}

const json& require_field(const json& obj, const char* field, const std::string& source) {
    if (!obj.is_object()) throw InputError(source, "document must be a JSON object");
    const auto it = obj.find(field);
    if (it == obj.end()) throw InputError(source + ": field '" + field + "'", "missing");
    return *it;
}

double number_field(const json& value, const std::string& where) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return parse_number(value.get<std::string>(), where);
    throw InputError(where, "expected a number or a fraction string");
}

int integer_field(const json& value, const std::string& where) {
    if (value.is_number_integer()) return value.get<int>();
    if (value.is_number_float()) {
        const double v = value.get<double>();
        if (v == std::floor(v) && std::abs(v) < 1e9) return static_cast<int>(v);
    }
    throw InputError(where, "expected an integer");
}

std::string string_field(const json& value, const std::string& where) {
    if (!value.is_string()) throw InputError(where, "expected a string");
    std::string s = value.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

double parse_number(std::string_view text, const std::string& where) {
    const std::string t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return parse_decimal(t, where);
    const double numerator = parse_decimal(std::string_view(t).substr(0, slash), where);
    const double denominator = parse_decimal(std::string_view(t).substr(slash + 1), where);
    if (denominator == 0.0) throw InputError(where, "'" + t + "' divides by zero");
    return numerator / denominator;
}

Path parse_path(std::string_view text, const std::string& where) {
    Path path;
    const std::string t = trim(text);
    if (t.empty()) return path;
    std::size_t start = 0;
    while (start <= t.size()) {
        const auto comma = t.find(',', start);
        const std::string token = trim(std::string_view(t).substr(start, comma - start));
        if (token == "u" || token == "U") {
            path.push_back(Move::Up);
        } else if (token == "d" || token == "D") {
            path.push_back(Move::Down);
        } else {
            throw InputError(where, "path token '" + token + "' must be 'u' or 'd'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return path;
}

RawModel parse_model_document(std::string_view text, const std::string& source) {
    const json doc = parse_json(text, source);
    auto field = [&](const char* name) { return source + ": field '" + name + "'"; };
    RawModel raw;
    raw.s0 = number_field(require_field(doc, "s0", source), field("s0"));
    raw.u = number_field(require_field(doc, "u", source), field("u"));
    raw.d = number_field(require_field(doc, "d", source), field("d"));
    raw.r = number_field(require_field(doc, "r", source), field("r"));
    raw.n_periods = integer_field(require_field(doc, "periods", source), field("periods"));
    return raw;
}

OptionSpec parse_option_document(std::string_view text, const std::string& source) {
    const json doc = parse_json(text, source);
    auto field = [&](const std::string& name) { return source + ": field '" + name + "'"; };

    OptionSpec spec;
    const std::string style = string_field(require_field(doc, "style", source), field("style"));
    if (style == "european") {
        spec.style = ExerciseStyle::European;
    } else if (style == "american") {
        spec.style = ExerciseStyle::American;
    } else {
        throw InputError(field("style"), "expected 'european' or 'american', got '" + style + "'");
    }

    const std::string kind = string_field(require_field(doc, "kind", source), field("kind"));
    if (kind == "call" || kind == "put") {
        spec.kind = kind == "call" ? PayoffKind::Call : PayoffKind::Put;
        spec.strike = number_field(require_field(doc, "strike", source), field("strike"));
    } else if (kind == "custom") {
        spec.kind = PayoffKind::Custom;
        const json& table = require_field(doc, "payoff", source);
        if (!table.is_array()) throw InputError(field("payoff"), "expected an array of entries");
        for (std::size_t i = 0; i < table.size(); ++i) {
            const std::string where = field("payoff[" + std::to_string(i) + "]");
            const json& entry = table[i];
            const NodeId node{integer_field(require_field(entry, "time", where), where + ".time"),
                              integer_field(require_field(entry, "up_count", where), where + ".up_count")};
            const double value = number_field(require_field(entry, "value", where), where + ".value");
            if (!spec.payoff_table.emplace(node, value).second) {
                throw InputError(where, "duplicate entry for node " + to_string(node));
            }
        }
    } else {
        throw InputError(field("kind"), "expected 'call', 'put' or 'custom', got '" + kind + "'");
    }

    if (const auto it = doc.find("maturity"); it != doc.end()) {
        spec.maturity = integer_field(*it, field("maturity"));
    }
    return spec;
}

Format parse_format(std::string_view text) {
    if (text == "table") return Format::Table;
    if (text == "structured" || text == "json") return Format::Structured;
    if (text == "tree") return Format::Tree;
    throw InputError("--format", "expected table, structured or tree");
}

LatticeDocument make_lattice_document(const ModelParams& params, const ValueLattice& lattice) {
    LatticeDocument doc;
    doc.root_price = lattice.root();
    for_each_node(lattice.n_periods(), [&](NodeId node) {
        doc.rows.push_back({node, asset_price(params, node), lattice[node], lattice.exercise[node]});
    });
    return doc;
}

namespace {

json model_json(const ModelParams& m) {
    return {{"s0", m.s0()}, {"u", m.u()}, {"d", m.d()}, {"r", m.r()}, {"periods", m.n_periods()},
            {"q", m.q()}};
}

json option_json(const OptionSpec& spec) {
    json j{{"kind", to_string(spec.kind)}, {"style", to_string(spec.style)}};
    if (spec.kind != PayoffKind::Custom) j["strike"] = spec.strike;
    return j;
}

std::string lattice_table(const LatticeDocument& doc) {
    std::ostringstream os;
    os << "# root_price=" << num(doc.root_price) << "\n";
    os << "time,up_count,asset_price,value,exercise_flag\n";
    for (const auto& row : doc.rows) {
        os << row.node.time << ',' << row.node.up_count << ',' << num(row.asset_price) << ','
           << num(row.value) << ',' << (row.exercise ? 1 : 0) << '\n';
    }
    return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int parse_int(const std::string& s, const std::string& where) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw InputError(where, "'" + s + "' is not an integer");
    }
    return v;
}

// Reads "# key=value" headers and CSV rows following a header line.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Table parse_table(std::string_view text) {
    Table t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) t.meta.emplace_back(trim(line.substr(1, eq - 1)), trim(line.substr(eq + 1)));
            continue;
        }
        auto cells = split_csv(line);
        if (t.columns.empty()) {
            t.columns = std::move(cells);
        } else {
            if (cells.size() != t.columns.size()) {
                throw InputError("line " + std::to_string(line_no),
                                 "expected " + std::to_string(t.columns.size()) + " columns");
            }
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

std::size_t column(const Table& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    if (it == t.columns.end()) throw InputError("table", "missing column '" + name + "'");
    return static_cast<std::size_t>(it - t.columns.begin());
}

std::optional<std::string> meta(const Table& t, const std::string& key) {
    for (const auto& [k, v] : t.meta) {
        if (k == key) return v;
    }
    return std::nullopt;
}

bool looks_structured(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string_view::npos && text[first] == '{';
}

}  // namespace

std::string emit_lattice(const LatticeDocument& doc, const ModelParams& params,
                         const OptionSpec& spec, Format format) {
    if (format == Format::Tree && params.n_periods() <= 5) {
        std::ostringstream os;
        os << "root_price " << num(doc.root_price) << "\n" << render_tree(doc, params.n_periods());
        return os.str();
    }
    if (format != Format::Structured) return lattice_table(doc);

    json nodes = json::array();
    for (const auto& row : doc.rows) {
        nodes.push_back({{"time", row.node.time},
                         {"up_count", row.node.up_count},
                         {"asset_price", row.asset_price},
                         {"value", row.value},
                         {"exercise", row.exercise}});
    }
    json out{{"model", model_json(params)},
             {"option", option_json(spec)},
             {"root_price", doc.root_price},
             {"nodes", std::move(nodes)}};
    return out.dump(2) + "\n";
}

LatticeDocument parse_lattice_document(std::string_view text) {
    LatticeDocument doc;
    if (looks_structured(text)) {
        const json j = parse_json(text, "lattice");
        doc.root_price = number_field(require_field(j, "root_price", "lattice"), "lattice: root_price");
        for (const auto& n : require_field(j, "nodes", "lattice")) {
            LatticeRow row;
            row.node = {integer_field(require_field(n, "time", "node"), "node.time"),
                        integer_field(require_field(n, "up_count", "node"), "node.up_count")};
            row.asset_price = number_field(require_field(n, "asset_price", "node"), "node.asset_price");
            row.value = number_field(require_field(n, "value", "node"), "node.value");
            row.exercise = require_field(n, "exercise", "node").get<bool>();
            doc.rows.push_back(row);
        }
        return doc;
    }

    const Table t = parse_table(text);
    const auto root = meta(t, "root_price");
    if (!root) throw InputError("lattice", "missing '# root_price=' header");
    doc.root_price = parse_number(*root, "root_price");
    const auto c_time = column(t, "time");
    const auto c_up = column(t, "up_count");
    const auto c_s = column(t, "asset_price");
    const auto c_v = column(t, "value");
    const auto c_x = column(t, "exercise_flag");
    for (const auto& cells : t.rows) {
        LatticeRow row;
        row.node = {parse_int(cells[c_time], "time"), parse_int(cells[c_up], "up_count")};
        row.asset_price = parse_number(cells[c_s], "asset_price");
        row.value = parse_number(cells[c_v], "value");
        row.exercise = parse_int(cells[c_x], "exercise_flag") != 0;
        doc.rows.push_back(row);
    }
    return doc;
}

PlanDocument make_plan_document(const HedgePlan& plan, std::optional<double> worst_shortfall) {
    PlanDocument doc;
    const int N = plan.model.n_periods();
    doc.root_value = plan.values.root();
    for_each_node(N, [&](NodeId node) {
        PlanRow row;
        row.node = node;
        row.asset_price = asset_price(plan.model, node);
        row.value = plan.values[node];
        if (node.time < N) row.position = plan.positions[node];
        doc.rows.push_back(row);
    });
    doc.worst_shortfall = worst_shortfall;
    if (worst_shortfall) doc.paths_replayed = std::size_t{1} << N;
    return doc;
}

std::string emit_plan(const PlanDocument& doc, Format format) {
    if (format == Format::Structured) {
        json nodes = json::array();
        for (const auto& row : doc.rows) {
            json n{{"time", row.node.time},
                   {"up_count", row.node.up_count},
                   {"asset_price", row.asset_price},
                   {"value", row.value}};
            if (row.position) {
                n["a"] = row.position->a;
                n["b"] = row.position->b;
            }
            nodes.push_back(std::move(n));
        }
        json out{{"root_value", doc.root_value}, {"nodes", std::move(nodes)}};
        if (doc.worst_shortfall) {
            out["replay"] = {{"worst_shortfall", *doc.worst_shortfall},
                             {"paths", *doc.paths_replayed}};
        } else {
            out["replay"] = nullptr;
        }
        return out.dump(2) + "\n";
    }

    std::ostringstream os;
    os << "# root_value=" << num(doc.root_value) << "\n";
    if (doc.worst_shortfall) {
        os << "# worst_shortfall=" << num(*doc.worst_shortfall) << "\n";
        os << "# paths_replayed=" << *doc.paths_replayed << "\n";
    }
    os << "time,up_count,asset_price,value,a,b\n";
    for (const auto& row : doc.rows) {
        os << row.node.time << ',' << row.node.up_count << ',' << num(row.asset_price) << ','
           << num(row.value) << ',';
        if (row.position) os << num(row.position->a) << ',' << num(row.position->b);
        else os << ',';
        os << '\n';
    }
    return os.str();
}

PlanDocument parse_plan_document(std::string_view text) {
    PlanDocument doc;
    if (looks_structured(text)) {
        const json j = parse_json(text, "plan");
        doc.root_value = number_field(require_field(j, "root_value", "plan"), "plan: root_value");
        for (const auto& n : require_field(j, "nodes", "plan")) {
            PlanRow row;
            row.node = {integer_field(require_field(n, "time", "node"), "node.time"),
                        integer_field(require_field(n, "up_count", "node"), "node.up_count")};
            row.asset_price = number_field(require_field(n, "asset_price", "node"), "node.asset_price");
            row.value = number_field(require_field(n, "value", "node"), "node.value");
            if (n.contains("a")) {
                HedgePosition pos;
                pos.a = number_field(n["a"], "node.a");
                pos.b = number_field(n["b"], "node.b");
                pos.node_value = row.value;
                row.position = pos;
            }
            doc.rows.push_back(row);
        }
        if (const auto it = j.find("replay"); it != j.end() && !it->is_null()) {
            doc.worst_shortfall = number_field(require_field(*it, "worst_shortfall", "replay"), "replay");
            doc.paths_replayed = require_field(*it, "paths", "replay").get<std::size_t>();
        }
        return doc;
    }

    const Table t = parse_table(text);
    const auto root = meta(t, "root_value");
    if (!root) throw InputError("plan", "missing '# root_value=' header");
    doc.root_value = parse_number(*root, "root_value");
    if (const auto w = meta(t, "worst_shortfall")) doc.worst_shortfall = parse_number(*w, "worst_shortfall");
    if (const auto p = meta(t, "paths_replayed")) {
        doc.paths_replayed = static_cast<std::size_t>(parse_int(*p, "paths_replayed"));
    }
    const auto c_time = column(t, "time");
    const auto c_up = column(t, "up_count");
    const auto c_s = column(t, "asset_price");
    const auto c_v = column(t, "value");
    const auto c_a = column(t, "a");
    const auto c_b = column(t, "b");
    for (const auto& cells : t.rows) {
        PlanRow row;
        row.node = {parse_int(cells[c_time], "time"), parse_int(cells[c_up], "up_count")};
        row.asset_price = parse_number(cells[c_s], "asset_price");
        row.value = parse_number(cells[c_v], "value");
        if (!cells[c_a].empty()) {
            row.position = HedgePosition{parse_number(cells[c_a], "a"), parse_number(cells[c_b], "b"),
                                         row.value};
        }
        doc.rows.push_back(row);
    }
    return doc;
}

std::string emit_advice(const ExerciseAdvice& advice, Format format) {
    if (format == Format::Structured) {
        json out{{"node", {{"time", advice.node.time}, {"up_count", advice.node.up_count}}},
                 {"intrinsic", advice.intrinsic},
                 {"bank_benchmark", advice.bank_benchmark},
                 {"option_value", advice.continuation},
                 {"recommendation", to_string(advice.recommendation)}};
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "node " << to_string(advice.node) << "\n"
       << "intrinsic " << num(advice.intrinsic) << "\n"
       << "bank_benchmark " << num(advice.bank_benchmark) << "\n"
       << "option_value " << num(advice.continuation) << "\n"
       << "recommendation " << to_string(advice.recommendation) << "\n";
    return os.str();
}

std::string emit_reports(const std::vector<CheckReport>& reports, Format format) {
    if (format == Format::Structured) {
        json out = json::array();
        for (const auto& r : reports) {
            out.push_back({{"check", r.name},
                           {"passed", r.passed},
                           {"worst_violation", r.worst_violation},
                           {"worst_node", {{"time", r.worst_node.time}, {"up_count", r.worst_node.up_count}}},
                           {"worst_condition", r.worst_condition},
                           {"tolerance", r.tolerance}});
        }
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "check,status,worst_violation,worst_node,condition\n";
    for (const auto& r : reports) {
        os << r.name << ',' << (r.passed ? "pass" : "FAIL") << ',' << num(r.worst_violation) << ','
           << r.worst_node.time << '/' << r.worst_node.up_count << ',' << r.worst_condition << '\n';
    }
    return os.str();
}

std::string emit_portfolio(const OptimalPortfolio& p, Format format) {
    if (format == Format::Structured) {
        json out{{"a", p.a},
                 {"b", p.b},
                 {"v1_up", p.v1_up},
                 {"v1_down", p.v1_down},
                 {"objective", p.objective},
                 {"binding_constraint", to_string(p.binding)}};
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "a " << num(p.a) << "\n"
       << "b " << num(p.b) << "\n"
       << "v1_up " << num(p.v1_up) << "\n"
       << "v1_down " << num(p.v1_down) << "\n"
       << "objective " << num(p.objective) << "\n"
       << "binding_constraint " << to_string(p.binding) << "\n";
    return os.str();
}

std::string render_tree(const LatticeDocument& doc, int n_periods) {
    constexpr int kCell = 10;
    constexpr int kGap = 3;
    // Nodes sit on every other line; connectors fill the lines between.
    const int rows = 4 * n_periods + 1;
    const int width = (n_periods + 1) * kCell + n_periods * kGap;
    std::vector<std::string> grid(static_cast<std::size_t>(rows), std::string(static_cast<std::size_t>(width), ' '));

    for (const auto& row : doc.rows) {
        const int n = row.node.time;
        const int line = 2 * (n_periods - (2 * row.node.up_count - n));
        const int col = n * (kCell + kGap);
        char cell[32];
        std::snprintf(cell, sizeof cell, "%.4f%s", row.value, row.exercise ? "*" : "");
        grid[static_cast<std::size_t>(line)].replace(static_cast<std::size_t>(col), std::strlen(cell), cell);
        if (n < n_periods) {
            const auto gap = static_cast<std::size_t>(col + kCell);
            grid[static_cast<std::size_t>(line - 1)][gap] = '/';
            grid[static_cast<std::size_t>(line + 1)][gap] = '\\';
        }
    }
    std::string out;
    for (auto& line : grid) {
        line.erase(line.find_last_not_of(' ') + 1);
        out += line + "\n";
    }
    return out;
}

}  // namespace binomial::cli
