#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "binomial/analytics.hpp"
#include "binomial/lattice_model.hpp"
#include "binomial/optimization.hpp"
#include "binomial/pricing.hpp"
#include "binomial/replication.hpp"

namespace binomial::cli {

/// Malformed input: a document that does not parse, a missing or mistyped
/// field, or a bad command-line value. `where` names the file or flag and,
/// when known, the field or line.
class InputError : public std::runtime_error {
public:
    InputError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Decimal ("0.5", "1e-3") or fraction ("1/2", "-3/4") text.
double parse_number(std::string_view text, const std::string& where);

/// Comma-separated u/d tokens; an empty string is the empty path.
Path parse_path(std::string_view text, const std::string& where);

// Input documents are JSON objects:
//   model:  {"s0": 1, "u": 2, "d": "1/2", "r": "1/2", "periods": 3}
//   option: {"kind": "call", "style": "american", "strike": "5/2"}
//           {"kind": "custom", "style": "european",
//            "payoff": [{"time": 3, "up_count": 0, "value": 0}, ...]}
// Numeric fields accept JSON numbers or strings holding decimals/fractions.

RawModel parse_model_document(std::string_view text, const std::string& source);
OptionSpec parse_option_document(std::string_view text, const std::string& source);

enum class Format { Table, Structured, Tree };
Format parse_format(std::string_view text);

/// One lattice row; `exercise` is false for European prices.
struct LatticeRow {
    NodeId node;
    double asset_price = 0.0;
    double value = 0.0;
    bool exercise = false;
};

struct LatticeDocument {
    double root_price = 0.0;
    std::vector<LatticeRow> rows;  // by time, then up_count descending
};

LatticeDocument make_lattice_document(const ModelParams& params, const ValueLattice& lattice);

/// Table: "# root_price=<v>" header, then CSV with columns
/// time,up_count,asset_price,value,exercise_flag.
std::string emit_lattice(const LatticeDocument& doc, const ModelParams& params,
                         const OptionSpec& spec, Format format);
/// Accepts either the structured or the table rendering.
LatticeDocument parse_lattice_document(std::string_view text);

struct PlanRow {
    NodeId node;
    double asset_price = 0.0;
    double value = 0.0;
    std::optional<HedgePosition> position;  // absent at leaves
};

struct PlanDocument {
    double root_value = 0.0;
    std::vector<PlanRow> rows;
    std::optional<double> worst_shortfall;  // replay summary when N is small enough
    std::optional<std::size_t> paths_replayed;
};

PlanDocument make_plan_document(const HedgePlan& plan, std::optional<double> worst_shortfall);
std::string emit_plan(const PlanDocument& doc, Format format);
PlanDocument parse_plan_document(std::string_view text);

std::string emit_advice(const ExerciseAdvice& advice, Format format);
std::string emit_reports(const std::vector<CheckReport>& reports, Format format);
std::string emit_portfolio(const OptimalPortfolio& portfolio, Format format);

/// Root-left, leaves-right drawing of a lattice with at most five periods.
std::string render_tree(const LatticeDocument& doc, int n_periods);

}  // namespace binomial::cli
