#pragma once

#include <limits>
#include <span>
#include <vector>

#include "binomial/lattice_model.hpp"
#include "binomial/value_lattice.hpp"

namespace binomial {

/// Prescribed one-period terminal values: A in the up state, B in the down state.
struct TargetPair {
    double up_value = 0.0;
    double down_value = 0.0;
};

/// a shares plus b in the bank, worth a * S + b at the node.
struct HedgePosition {
    double a = 0.0;
    double b = 0.0;
    double node_value = 0.0;
};

/// Portfolio (a, b) at a node with asset price `s` whose value one period
/// later is exactly A after an up-move and B after a down-move:
///
///   a = (A - B) / ((u - d) s),   b = (B u - A d) / ((u - d)(1 + r))
///
/// and its cost equals (q A + (1 - q) B) / (1 + r).
HedgePosition solve_one_step(double s, const ModelParams& params, TargetPair targets);

/// Whether the perturbation (eps_up, eps_down) of the replication targets
/// leaves the initial value unchanged, i.e.
///   eps_up (1 + r - d) + eps_down (u - (1 + r)) == 0.
/// Both arguments must be >= 0 (Error{NegativePerturbation} otherwise).
bool check_minimality(double eps_up, double eps_down, const ModelParams& params);

/// Lower bound on portfolio value at every node. Nodes without a floor hold
/// -infinity; every leaf must carry a finite floor.
class FloorLattice {
public:
    static constexpr double kNoFloor = -std::numeric_limits<double>::infinity();

    explicit FloorLattice(int n_periods) : floors_(n_periods, kNoFloor) {}

    int n_periods() const noexcept { return floors_.n_periods(); }

    void set(NodeId node, double floor);
    double operator[](NodeId node) const { return floors_[node]; }
    bool has_floor(NodeId node) const { return floors_[node] != kNoFloor; }

private:
    NodeField<double> floors_;
};

/// One hedge position per interior node plus the value lattice they finance.
struct HedgePlan {
    ModelParams model;
    ValueLattice values;
    NodeField<HedgePosition> positions;  // meaningful for time < n_periods
    NodeField<double> continuation;      // discounted expectation of the children; leaves hold the value
};

/// Cheapest self-financing portfolio whose value dominates `floors` at every
/// node:
///   V(N, j) = floor(N, j)
///   V(n, j) = max{ floor(n, j), (q V(n+1, j+1) + (1 - q) V(n+1, j)) / (1 + r) }
///
/// The position at (n, j) replicates (V(n+1, j+1), V(n+1, j)); any excess of
/// V(n, j) over the continuation value sits in the bank leg.
/// Throws Error{ArbitrageModel} or Error{IncompleteFloors}.
HedgePlan superhedge(const ModelParams& params, const FloorLattice& floors);

/// Copy of `plan` funded with `root_value` instead of V(0, 0); the difference
/// is absorbed by the root bank leg. Used to probe minimality.
HedgePlan with_root_value(HedgePlan plan, double root_value);

struct RollResult {
    std::vector<NodeId> nodes;      // visited nodes, root first
    std::vector<double> achieved;   // portfolio value on arrival at each node
    std::vector<double> surplus;    // achieved - planned value
};

/// Runs the plan forward along `path`. Wealth starts at V(0, 0); at each node
/// the plan's share count is held and the remainder of current wealth is
/// banked, so excess funds keep compounding.
/// Throws Error{PathLengthMismatch} unless path.size() == n_periods.
RollResult roll_hedge(const HedgePlan& plan, std::span<const Move> path);

}  // namespace binomial
