#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "binomial/lattice_model.hpp"
#include "binomial/replication.hpp"
#include "binomial/value_lattice.hpp"

namespace binomial {

enum class PayoffKind { Call, Put, Custom };
enum class ExerciseStyle { European, American };

std::string_view to_string(PayoffKind kind) noexcept;
std::string_view to_string(ExerciseStyle style) noexcept;

/// Payoff description. Calls and puts use the strike; custom payoffs read a
/// table keyed by node, which must cover every leaf (European) or every node
/// (American). When `maturity` is set it must equal the model horizon.
struct OptionSpec {
    PayoffKind kind = PayoffKind::Call;
    ExerciseStyle style = ExerciseStyle::European;
    double strike = 0.0;
    std::map<NodeId, double> payoff_table;
    std::optional<int> maturity;

    static OptionSpec call(double strike, ExerciseStyle style);
    static OptionSpec put(double strike, ExerciseStyle style);
    static OptionSpec custom(std::map<NodeId, double> table, ExerciseStyle style);

    bool is_american() const noexcept { return style == ExerciseStyle::American; }
};

/// Throws Error{InvalidOption} or Error{MissingPayoffEntry}.
void validate_option(const ModelParams& params, const OptionSpec& spec);

/// (s - K)^+ for calls, (K - s)^+ for puts. Custom payoffs need a node, so
/// this overload throws Error{MissingPayoffEntry} for them.
double intrinsic(const OptionSpec& spec, double s);

/// Exercise value at `node` where the asset trades at `s`.
double intrinsic(const OptionSpec& spec, NodeId node, double s);

/// Floors for the shared backward induction: intrinsic value at every node
/// for American options, at the leaves only for European ones.
FloorLattice exercise_floors(const ModelParams& params, const OptionSpec& spec);

/// Risk-neutral backward induction of the terminal payoff. Throws
/// Error{ArbitrageModel} and Error{InvalidOption} for an American spec.
ValueLattice price_european(const ModelParams& params, const OptionSpec& spec);

/// H(N, j) = X(N, j); H(n, j) = max{X(n, j), discounted continuation}.
/// Nodes are flagged exercise-optimal where X >= continuation and X > 0.
ValueLattice price_american(const ModelParams& params, const OptionSpec& spec);

/// Dispatches on spec.style.
ValueLattice price(const ModelParams& params, const OptionSpec& spec);

enum class Recommendation { Exercise, Hold, Indifferent };
std::string_view to_string(Recommendation rec) noexcept;

struct ExerciseAdvice {
    NodeId node;
    double intrinsic = 0.0;
    double bank_benchmark = 0.0;  // V0 (1 + r)^n
    double continuation = 0.0;    // H at the node
    Recommendation recommendation = Recommendation::Hold;
};

/// Exercise now iff X_n > V0 (1 + r)^n, where V0 is the American price paid
/// at time zero. Values within 1e-12 of the benchmark are reported as
/// Indifferent.
ExerciseAdvice advise_exercise(const ModelParams& params, const OptionSpec& spec,
                               std::span<const Move> path_prefix);

struct FairValueReport {
    double q_price = 0.0;  // replication price
    double p_price = 0.0;  // discounted real-world expected profit
    double fair_value = 0.0;
    double p = 0.0;
};

/// min{V0^q, V0^p} with V0^p the discounted terminal payoff expectation under
/// up-probability p. Throws Error{InvalidProbability} unless 0 < p < 1.
FairValueReport fair_value_european(const ModelParams& params, const OptionSpec& spec, double p);

/// min{V0^q, V0^p} with V0^q the American price and
/// V0^p = max_n E^P[X_n] / (1 + r)^n.
FairValueReport fair_value_american(const ModelParams& params, const OptionSpec& spec, double p);

}  // namespace binomial
