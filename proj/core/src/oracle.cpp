#include "binomial/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "binomial/error.hpp"

namespace binomial::oracle {

namespace {

void guard_depth(int depth, int limit, const char* what) {
    if (depth > limit) {
        throw Error(ErrorCode::TreeTooDeep, std::string(what) + " supports at most " +
                                                std::to_string(limit) + " periods, got " +
                                                std::to_string(depth));
    }
}

double risk_neutral_q(const ModelParams& params) {
    return (1.0 + params.r() - params.d()) / (params.u() - params.d());
}

}  // namespace

PrefixIndex prefix_index(int length, std::uint32_t code) noexcept {
    return ((PrefixIndex{1} << length) - 1) + code;
}

int prefix_length(PrefixIndex index) noexcept {
    return std::bit_width(index + 1) - 1;
}

std::uint32_t prefix_code(PrefixIndex index) noexcept {
    return index + 1 - (PrefixIndex{1} << prefix_length(index));
}

NodeId prefix_node(PrefixIndex index) noexcept {
    return {prefix_length(index), std::popcount(prefix_code(index))};
}

Path prefix_moves(PrefixIndex index) {
    const int n = prefix_length(index);
    const auto code = prefix_code(index);
    Path path;
    path.reserve(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) path.push_back(((code >> i) & 1U) ? Move::Up : Move::Down);
    return path;
}

FullTree::FullTree(int depth, double fill)
    : depth_(depth), values_((std::size_t{1} << (depth + 1)) - 1, fill) {}

FullTree asset_tree(const ModelParams& params) {
    const int N = params.n_periods();
    guard_depth(N, kMaxPathDepth, "full-tree enumeration");
    // Products accumulate in extended precision and are rounded once.
    std::vector<long double> wide(std::size_t{2} << N);
    wide[0] = params.s0();
    const PrefixIndex interior = (PrefixIndex{1} << N) - 1;
    for (PrefixIndex i = 0; i < interior; ++i) {
        wide[FullTree::up_child(i)] = wide[i] * params.u();
        wide[FullTree::down_child(i)] = wide[i] * params.d();
    }
    FullTree tree(N, 0.0);
    for (PrefixIndex i = 0; i < tree.size(); ++i) tree[i] = static_cast<double>(wide[i]);
    return tree;
}

double oracle_european(const ModelParams& params, const OptionSpec& spec) {
    require_arbitrage_free(params);
    validate_option(params, spec);
    const int N = params.n_periods();
    guard_depth(N, kMaxPathDepth, "oracle_european");
    const double q = risk_neutral_q(params);

    double total = 0.0;
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << N); ++code) {
        double price = params.s0();
        double weight = 1.0;
        for (int step = N - 1; step >= 0; --step) {
            if ((code >> step) & 1U) {
                price *= params.u();
                weight *= q;
            } else {
                price *= params.d();
                weight *= 1.0 - q;
            }
        }
        const NodeId leaf{N, std::popcount(code)};
        total += weight * intrinsic(spec, leaf, price);
    }
    return total / std::pow(1.0 + params.r(), N);
}

bool is_well_formed(const StoppingRule& rule, int depth) {
    const PrefixIndex total = (PrefixIndex{1} << (depth + 1)) - 1;
    for (const auto s : rule.stops) {
        if (s >= total) return false;
    }
    // Walk every full path and count marks passed.
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << depth); ++code) {
        int marks = 0;
        for (int n = 0; n <= depth; ++n) {
            const auto idx = prefix_index(n, code >> (depth - n));
            if (std::binary_search(rule.stops.begin(), rule.stops.end(), idx)) ++marks;
        }
        if (marks != 1) return false;
    }
    return true;
}

namespace {

// All stopping rules for the subtree rooted at `root` with `remaining` levels below it.
std::vector<std::vector<PrefixIndex>> rules_below(PrefixIndex root, int remaining) {
    std::vector<std::vector<PrefixIndex>> out;
    out.push_back({root});
    if (remaining == 0) return out;
    const auto ups = rules_below(FullTree::up_child(root), remaining - 1);
    const auto downs = rules_below(FullTree::down_child(root), remaining - 1);
    out.reserve(1 + ups.size() * downs.size());
    for (const auto& up : ups) {
        for (const auto& down : downs) {
            std::vector<PrefixIndex> merged;
            merged.reserve(up.size() + down.size());
            merged.insert(merged.end(), up.begin(), up.end());
            merged.insert(merged.end(), down.begin(), down.end());
            out.push_back(std::move(merged));
        }
    }
    return out;
}

}  // namespace

std::vector<StoppingRule> enumerate_stopping_rules(int depth) {
    guard_depth(depth, kMaxStoppingDepth, "stopping-rule enumeration");
    std::vector<StoppingRule> rules;
    for (auto& stops : rules_below(0, depth)) {
        std::sort(stops.begin(), stops.end());
        rules.push_back(StoppingRule{std::move(stops)});
    }
    return rules;
}

double stopped_value(const ModelParams& params, const OptionSpec& spec, const StoppingRule& rule) {
    const int N = params.n_periods();
    const double q = risk_neutral_q(params);
    const double growth = 1.0 + params.r();
    double total = 0.0;
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << N); ++code) {
        // Full-path weight: summed over all extensions of a prefix it gives the prefix weight.
        double weight = 1.0;
        for (int n = 1; n <= N; ++n) weight *= ((code >> (N - n)) & 1U) ? q : 1.0 - q;

        double price = params.s0();
        for (int n = 0; n <= N; ++n) {
            if (n > 0) price *= ((code >> (N - n)) & 1U) ? params.u() : params.d();
            const auto idx = prefix_index(n, code >> (N - n));
            if (std::binary_search(rule.stops.begin(), rule.stops.end(), idx)) {
                total += weight * intrinsic(spec, prefix_node(idx), price) / std::pow(growth, n);
                break;
            }
        }
    }
    return total;
}

AmericanSearch oracle_american_search(const ModelParams& params, const OptionSpec& spec) {
    require_arbitrage_free(params);
    OptionSpec american = spec;
    american.style = ExerciseStyle::American;
    validate_option(params, american);
    const auto rules = enumerate_stopping_rules(params.n_periods());

    AmericanSearch best;
    best.value = -std::numeric_limits<double>::infinity();
    for (const auto& rule : rules) {
        const double v = stopped_value(params, american, rule);
        if (v > best.value) {
            best.value = v;
            best.best_rule = rule;
        }
    }
    best.rules_examined = rules.size();
    return best;
}

double oracle_american(const ModelParams& params, const OptionSpec& spec) {
    return oracle_american_search(params, spec).value;
}

FullTree oracle_superhedge(const ModelParams& params, const FloorLattice& floors) {
    require_arbitrage_free(params);
    const int N = params.n_periods();
    guard_depth(N, kMaxPathDepth, "oracle_superhedge");
    const double q = risk_neutral_q(params);
    const double growth = 1.0 + params.r();

    FullTree values(N, 0.0);
    const PrefixIndex total = static_cast<PrefixIndex>(values.size());
    const PrefixIndex first_leaf = (PrefixIndex{1} << N) - 1;
    for (PrefixIndex i = total; i-- > 0;) {
        const double floor = floors[prefix_node(i)];
        if (i >= first_leaf) {
            values[i] = floor;
            continue;
        }
        const double cont =
            (q * values[FullTree::up_child(i)] + (1.0 - q) * values[FullTree::down_child(i)]) / growth;
        values[i] = std::max(floor, cont);
    }
    return values;
}

double oracle_hedge_replay(const HedgePlan& plan, const FloorLattice& floors) {
    const auto& params = plan.model;
    const int N = params.n_periods();
    guard_depth(N, kMaxPathDepth, "oracle_hedge_replay");
    if (floors.n_periods() != N) {
        throw Error(ErrorCode::PathLengthMismatch, "floor lattice horizon differs from plan horizon");
    }
    const FullTree prices = asset_tree(params);
    // Extended precision keeps the replay's own rounding well below the
    // rounding already present in the plan's doubles.
    const long double growth = 1.0L + params.r();

    long double worst = std::numeric_limits<long double>::infinity();
    auto visit = [&](NodeId node, long double wealth) {
        if (floors.has_floor(node)) worst = std::min(worst, wealth - floors[node]);
    };

    for (std::uint32_t code = 0; code < (std::uint32_t{1} << N); ++code) {
        PrefixIndex idx = 0;
        NodeId node{0, 0};
        long double wealth = plan.values.values[node];
        visit(node, wealth);
        for (int n = 1; n <= N; ++n) {
            const long double shares = plan.positions[node].a;
            const long double bank = wealth - shares * prices[idx];
            const bool up = (code >> (N - n)) & 1U;
            idx = up ? FullTree::up_child(idx) : FullTree::down_child(idx);
            node = up ? node.up() : node.down();
            wealth = shares * prices[idx] + bank * growth;
            visit(node, wealth);
        }
    }
    return static_cast<double>(worst);
}

double oracle_hedge_replay(const ModelParams& params, const HedgePlan& plan, const OptionSpec& spec) {
    if (plan.model.n_periods() != params.n_periods()) {
        throw Error(ErrorCode::PathLengthMismatch, "plan horizon differs from model horizon");
    }
    return oracle_hedge_replay(plan, exercise_floors(params, spec));
}

}  // namespace binomial::oracle
