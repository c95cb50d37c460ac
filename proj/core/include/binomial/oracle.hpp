#pragma once

#include <cstdint>
#include <vector>

#include "binomial/lattice_model.hpp"
#include "binomial/pricing.hpp"
#include "binomial/replication.hpp"

namespace binomial::oracle {

// Brute-force references on the full binary tree. Nothing here goes through
// the recombining lattice, so these results can be used to check it.

inline constexpr int kMaxPathDepth = 14;
inline constexpr int kMaxStoppingDepth = 4;

/// Index of a path prefix in heap order: the prefix of length n whose moves,
/// read as bits (up = 1) with the first move most significant, form `code`
/// lives at (2^n - 1) + code.
using PrefixIndex = std::uint32_t;

PrefixIndex prefix_index(int length, std::uint32_t code) noexcept;
int prefix_length(PrefixIndex index) noexcept;
std::uint32_t prefix_code(PrefixIndex index) noexcept;
NodeId prefix_node(PrefixIndex index) noexcept;
Path prefix_moves(PrefixIndex index);

/// One value per path prefix of length 0..depth; ud and du are distinct entries.
class FullTree {
public:
    FullTree(int depth, double fill);

    int depth() const noexcept { return depth_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator[](PrefixIndex i) { return values_[i]; }
    double operator[](PrefixIndex i) const { return values_[i]; }

    static PrefixIndex up_child(PrefixIndex i) noexcept { return 2 * i + 2; }
    static PrefixIndex down_child(PrefixIndex i) noexcept { return 2 * i + 1; }

private:
    int depth_;
    std::vector<double> values_;
};

/// Asset price at every prefix as the running product s0 * (u or d) * ...
/// Throws Error{TreeTooDeep} beyond kMaxPathDepth.
FullTree asset_tree(const ModelParams& params);

/// Discounted risk-neutral expectation of the terminal payoff, summed over
/// all 2^N explicit paths.
double oracle_european(const ModelParams& params, const OptionSpec& spec);

/// Sorted prefix indices at which to stop. Well formed when no marked prefix
/// extends another and every full path passes through exactly one mark.
struct StoppingRule {
    std::vector<PrefixIndex> stops;
};

bool is_well_formed(const StoppingRule& rule, int depth);

/// Every well-formed stopping rule on a tree of the given depth
/// (1, 2, 5, 26, 677 rules for depths 0..4). Throws Error{TreeTooDeep}.
std::vector<StoppingRule> enumerate_stopping_rules(int depth);

/// Discounted q-expectation of the intrinsic value collected under `rule`.
double stopped_value(const ModelParams& params, const OptionSpec& spec, const StoppingRule& rule);

struct AmericanSearch {
    double value = 0.0;
    StoppingRule best_rule;
    std::size_t rules_examined = 0;
};

/// Maximum of stopped_value over every stopping rule; N <= kMaxStoppingDepth.
AmericanSearch oracle_american_search(const ModelParams& params, const OptionSpec& spec);
double oracle_american(const ModelParams& params, const OptionSpec& spec);

/// Cheapest floor-dominating value at every prefix of the full tree, with
/// each prefix's floor read from its recombined node.
FullTree oracle_superhedge(const ModelParams& params, const FloorLattice& floors);

/// Rolls `plan` along every path and returns the minimum of
/// (portfolio value - floor) over all paths and all nodes that carry a floor.
/// A valid superhedge yields a value >= -1e-10.
double oracle_hedge_replay(const HedgePlan& plan, const FloorLattice& floors);

/// Same, with the floors implied by the option: intrinsic value at every node
/// for American options, terminal payoff only for European ones.
double oracle_hedge_replay(const ModelParams& params, const HedgePlan& plan, const OptionSpec& spec);

}  // namespace binomial::oracle
