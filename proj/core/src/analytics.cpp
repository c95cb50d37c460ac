#include "binomial/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "binomial/error.hpp"

namespace binomial {

namespace {

// Accumulates the worst signed violation across nodes and sub-conditions.
class Tally {
public:
    Tally(std::string name, double tolerance) {
        report_.name = std::move(name);
        report_.tolerance = tolerance;
        report_.worst_violation = -std::numeric_limits<double>::infinity();
    }

    void equal(NodeId node, const char* condition, double lhs, double rhs) {
        record(node, condition, std::abs(lhs - rhs));
    }

    void less_equal(NodeId node, const char* condition, double lhs, double rhs) {
        record(node, condition, lhs - rhs);
    }

    CheckReport finish() && {
        report_.passed = report_.worst_violation <= report_.tolerance;
        return std::move(report_);
    }

private:
    void record(NodeId node, const char* condition, double violation) {
        if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
        if (violation > report_.worst_violation) {
            report_.worst_violation = violation;
            report_.worst_node = node;
            report_.worst_condition = condition;
        }
    }

    CheckReport report_;
};

void require_checkable(const ModelParams& params) {
    require_arbitrage_free(params);
    if (params.r() < 0.0) {
        throw Error(ErrorCode::RequiresNonnegativeRate,
                    "parity and bound identities are only established for r >= 0");
    }
}

// K / (1 + r)^(N - n)
double discounted_strike(const ModelParams& params, double strike, int n) {
    return strike / std::pow(params.growth(), params.n_periods() - n);
}

}  // namespace

CheckReport check_european_parity(const ModelParams& params, double strike,
                                  const ValueLattice& european_call,
                                  const ValueLattice& european_put, double tolerance) {
    if (european_call.n_periods() != params.n_periods() ||
        european_put.n_periods() != params.n_periods()) {
        throw Error(ErrorCode::NodeOutOfRange, "lattice horizon differs from model horizon");
    }
    Tally tally("european-parity", tolerance);
    const AssetPrices prices(params);
    for_each_node(params.n_periods(), [&](NodeId node) {
        const double lhs = european_call[node] - european_put[node];
        const double rhs = prices(node) - discounted_strike(params, strike, node.time);
        tally.equal(node, "call - put == S - K/(1+r)^(N-n)", lhs, rhs);
    });
    return std::move(tally).finish();
}

CheckReport check_european_parity(const ModelParams& params, double strike, int maturity,
                                  double tolerance) {
    const auto model = params.with_periods(maturity);
    require_checkable(model);
    const auto call = price_european(model, OptionSpec::call(strike, ExerciseStyle::European));
    const auto put = price_european(model, OptionSpec::put(strike, ExerciseStyle::European));
    return check_european_parity(model, strike, call, put, tolerance);
}

CheckReport check_e_vs_a(const ModelParams& params, const OptionSpec& spec, double tolerance) {
    require_checkable(params);
    OptionSpec european = spec;
    european.style = ExerciseStyle::European;
    OptionSpec american = spec;
    american.style = ExerciseStyle::American;

    const auto e = price_european(params, european);
    const auto a = price_american(params, american);

    const bool equality = (spec.kind == PayoffKind::Call) ||
                          (spec.kind == PayoffKind::Put && params.r() == 0.0);

    Tally tally("e-vs-a-" + std::string(to_string(spec.kind)), tolerance);
    for_each_node(params.n_periods(), [&](NodeId node) {
        tally.less_equal(node, "V^E <= H", e[node], a[node]);
        if (equality) tally.equal(node, "V^E == H", e[node], a[node]);
    });
    return std::move(tally).finish();
}

CheckReport check_american_parity(const ModelParams& params, double strike, int maturity,
                                  double tolerance) {
    const auto model = params.with_periods(maturity);
    require_checkable(model);
    const auto call = price_american(model, OptionSpec::call(strike, ExerciseStyle::American));
    const auto put = price_american(model, OptionSpec::put(strike, ExerciseStyle::American));

    Tally tally("american-parity", tolerance);
    const AssetPrices prices(model);
    for_each_node(model.n_periods(), [&](NodeId node) {
        const double s = prices(node);
        const double spread = call[node] - put[node];
        tally.less_equal(node, "S - K <= H_call - H_put", s - strike, spread);
        tally.less_equal(node, "H_call - H_put <= S - K/(1+r)^(N-n)", spread,
                         s - discounted_strike(model, strike, node.time));
    });
    return std::move(tally).finish();
}

CheckReport check_bounds(const ModelParams& params, double strike, int maturity, double tolerance) {
    const auto model = params.with_periods(maturity);
    require_checkable(model);
    const auto e_call = price_european(model, OptionSpec::call(strike, ExerciseStyle::European));
    const auto a_call = price_american(model, OptionSpec::call(strike, ExerciseStyle::American));
    const auto e_put = price_european(model, OptionSpec::put(strike, ExerciseStyle::European));
    const auto a_put = price_american(model, OptionSpec::put(strike, ExerciseStyle::American));

    Tally tally("bounds", tolerance);
    const AssetPrices prices(model);
    for_each_node(model.n_periods(), [&](NodeId node) {
        const double s = prices(node);
        const double k_disc = discounted_strike(model, strike, node.time);

        tally.less_equal(node, "S - K/(1+r)^(N-n) <= V_call^E", s - k_disc, e_call[node]);
        tally.equal(node, "V_call^E == H_call", e_call[node], a_call[node]);
        tally.less_equal(node, "H_call <= S", a_call[node], s);

        tally.less_equal(node, "K/(1+r)^(N-n) - S <= V_put^E", k_disc - s, e_put[node]);
        tally.less_equal(node, "V_put^E <= K/(1+r)^(N-n)", e_put[node], k_disc);

        tally.less_equal(node, "(K - S)^+ <= H_put", std::max(strike - s, 0.0), a_put[node]);
        tally.less_equal(node, "H_put <= K", a_put[node], strike);
    });
    return std::move(tally).finish();
}

std::vector<CheckReport> run_all_checks(const ModelParams& params, double strike, int maturity,
                                        double tolerance) {
    const auto model = params.with_periods(maturity);
    std::vector<CheckReport> reports;
    reports.push_back(check_european_parity(model, strike, maturity, tolerance));
    reports.push_back(
        check_e_vs_a(model, OptionSpec::call(strike, ExerciseStyle::European), tolerance));
    reports.push_back(
        check_e_vs_a(model, OptionSpec::put(strike, ExerciseStyle::European), tolerance));
    reports.push_back(check_american_parity(model, strike, maturity, tolerance));
    reports.push_back(check_bounds(model, strike, maturity, tolerance));
    return reports;
}

}  // namespace binomial
