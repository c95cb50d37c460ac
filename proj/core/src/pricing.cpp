#include "binomial/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "binomial/error.hpp"

namespace binomial {

std::string_view to_string(PayoffKind kind) noexcept {
    switch (kind) {
        case PayoffKind::Call: return "call";
        case PayoffKind::Put: return "put";
        case PayoffKind::Custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(ExerciseStyle style) noexcept {
    return style == ExerciseStyle::American ? "american" : "european";
}

std::string_view to_string(Recommendation rec) noexcept {
    switch (rec) {
        case Recommendation::Exercise: return "exercise";
        case Recommendation::Hold: return "hold";
        case Recommendation::Indifferent: return "indifferent";
    }
    return "unknown";
}

OptionSpec OptionSpec::call(double strike, ExerciseStyle style) {
    OptionSpec spec;
    spec.kind = PayoffKind::Call;
    spec.style = style;
    spec.strike = strike;
    return spec;
}

OptionSpec OptionSpec::put(double strike, ExerciseStyle style) {
    OptionSpec spec;
    spec.kind = PayoffKind::Put;
    spec.style = style;
    spec.strike = strike;
    return spec;
}

OptionSpec OptionSpec::custom(std::map<NodeId, double> table, ExerciseStyle style) {
    OptionSpec spec;
    spec.kind = PayoffKind::Custom;
    spec.style = style;
    spec.payoff_table = std::move(table);
    return spec;
}

void validate_option(const ModelParams& params, const OptionSpec& spec) {
    const int N = params.n_periods();
    if (spec.maturity && *spec.maturity != N) {
        throw Error(ErrorCode::InvalidOption,
                    "option maturity " + std::to_string(*spec.maturity) +
                        " differs from model horizon " + std::to_string(N));
    }
    if (spec.kind != PayoffKind::Custom) {
        // K = 0 is admitted as the degenerate limit of the parity and bound identities.
        if (!(spec.strike >= 0.0) || !std::isfinite(spec.strike)) {
            throw Error(ErrorCode::InvalidOption, "strike must be a finite number >= 0");
        }
        return;
    }
    for (const auto& [node, value] : spec.payoff_table) {
        if (!in_lattice(node, N)) {
            throw Error(ErrorCode::InvalidOption,
                        "payoff entry " + to_string(node) + " lies outside the lattice");
        }
        if (!std::isfinite(value)) {
            throw Error(ErrorCode::InvalidOption, "payoff entry " + to_string(node) + " is not finite");
        }
    }
    const int first_level = spec.is_american() ? 0 : N;
    for (int n = first_level; n <= N; ++n) {
        for (int j = 0; j <= n; ++j) {
            if (!spec.payoff_table.contains(NodeId{n, j})) {
                throw Error(ErrorCode::MissingPayoffEntry,
                            "custom payoff has no entry for node " + to_string(NodeId{n, j}));
            }
        }
    }
}

double intrinsic(const OptionSpec& spec, double s) {
    switch (spec.kind) {
        case PayoffKind::Call: return std::max(s - spec.strike, 0.0);
        case PayoffKind::Put: return std::max(spec.strike - s, 0.0);
        case PayoffKind::Custom: break;
    }
    throw Error(ErrorCode::MissingPayoffEntry, "custom payoffs are looked up by node");
}

double intrinsic(const OptionSpec& spec, NodeId node, double s) {
    if (spec.kind != PayoffKind::Custom) return intrinsic(spec, s);
    const auto it = spec.payoff_table.find(node);
    if (it == spec.payoff_table.end()) {
        throw Error(ErrorCode::MissingPayoffEntry,
                    "custom payoff has no entry for node " + to_string(node));
    }
    return it->second;
}

FloorLattice exercise_floors(const ModelParams& params, const OptionSpec& spec) {
    validate_option(params, spec);
    const int N = params.n_periods();
    FloorLattice floors(N);
    const AssetPrices prices(params);
    const int first_level = spec.is_american() ? 0 : N;
    for (int n = first_level; n <= N; ++n) {
        for (int j = 0; j <= n; ++j) {
            const NodeId node{n, j};
            floors.set(node, intrinsic(spec, node, prices(node)));
        }
    }
    return floors;
}

ValueLattice price_european(const ModelParams& params, const OptionSpec& spec) {
    if (spec.is_american()) {
        throw Error(ErrorCode::InvalidOption, "price_european needs a European option");
    }
    require_arbitrage_free(params);
    return superhedge(params, exercise_floors(params, spec)).values;
}

ValueLattice price_american(const ModelParams& params, const OptionSpec& spec) {
    if (!spec.is_american()) {
        throw Error(ErrorCode::InvalidOption, "price_american needs an American option");
    }
    require_arbitrage_free(params);
    const auto floors = exercise_floors(params, spec);
    HedgePlan plan = superhedge(params, floors);

    for_each_node(params.n_periods(), [&](NodeId node) {
        const double x = floors[node];
        plan.values.exercise[node] = x > 0.0 && x >= plan.continuation[node];
    });
    return std::move(plan.values);
}

ValueLattice price(const ModelParams& params, const OptionSpec& spec) {
    return spec.is_american() ? price_american(params, spec) : price_european(params, spec);
}

ExerciseAdvice advise_exercise(const ModelParams& params, const OptionSpec& spec,
                               std::span<const Move> path_prefix) {
    if (!spec.is_american()) {
        throw Error(ErrorCode::InvalidOption, "exercise advice applies to American options");
    }
    if (static_cast<int>(path_prefix.size()) > params.n_periods()) {
        throw Error(ErrorCode::PathLengthMismatch,
                    "path prefix has " + std::to_string(path_prefix.size()) +
                        " moves, model has " + std::to_string(params.n_periods()) + " periods");
    }
    const ValueLattice lattice = price_american(params, spec);
    const NodeId node = node_after(path_prefix);

    ExerciseAdvice advice;
    advice.node = node;
    advice.intrinsic = intrinsic(spec, node, asset_price(params, node));
    advice.bank_benchmark = lattice.root() * std::pow(params.growth(), node.time);
    advice.continuation = lattice[node];

    const double gap = advice.intrinsic - advice.bank_benchmark;
    if (std::abs(gap) <= 1e-12) {
        advice.recommendation = Recommendation::Indifferent;
    } else {
        advice.recommendation = gap > 0.0 ? Recommendation::Exercise : Recommendation::Hold;
    }
    return advice;
}

namespace {

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "p must lie strictly between 0 and 1");
    }
}

// E^P[X_n] for every level n, propagating the binomial distribution level by level.
std::vector<double> expected_intrinsic_by_level(const ModelParams& params, const OptionSpec& spec,
                                                double p, int first_level) {
    const int N = params.n_periods();
    std::vector<double> out(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> prob{1.0};
    const AssetPrices prices(params);
    for (int n = 0; n <= N; ++n) {
        if (n >= first_level) {
            double e = 0.0;
            for (int j = 0; j <= n; ++j) {
                const NodeId node{n, j};
                e += prob[static_cast<std::size_t>(j)] * intrinsic(spec, node, prices(node));
            }
            out[static_cast<std::size_t>(n)] = e;
        }
        std::vector<double> next(prob.size() + 1, 0.0);
        for (std::size_t j = 0; j < prob.size(); ++j) {
            next[j] += (1.0 - p) * prob[j];
            next[j + 1] += p * prob[j];
        }
        prob = std::move(next);
    }
    return out;
}

}  // namespace

FairValueReport fair_value_european(const ModelParams& params, const OptionSpec& spec, double p) {
    require_probability(p);
    FairValueReport report;
    report.p = p;
    report.q_price = price_european(params, spec).root();
    const int N = params.n_periods();
    const auto expectations = expected_intrinsic_by_level(params, spec, p, N);
    report.p_price = expectations.back() / std::pow(params.growth(), N);
    report.fair_value = std::min(report.q_price, report.p_price);
    return report;
}

FairValueReport fair_value_american(const ModelParams& params, const OptionSpec& spec, double p) {
    require_probability(p);
    FairValueReport report;
    report.p = p;
    report.q_price = price_american(params, spec).root();
    const auto expectations = expected_intrinsic_by_level(params, spec, p, 0);
    report.p_price = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < expectations.size(); ++n) {
        report.p_price = std::max(report.p_price,
                                  expectations[n] / std::pow(params.growth(), static_cast<double>(n)));
    }
    report.fair_value = std::min(report.q_price, report.p_price);
    return report;
}

}  // namespace binomial
