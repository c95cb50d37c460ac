#pragma once

#include <string_view>

#include "binomial/lattice_model.hpp"

namespace binomial {

/// One-period allocation of initial wealth `v0` between the asset and the
/// bank, maximizing p V1^u + (1 - p) V1^d subject to V1^u >= 0 and V1^d >= 0.
/// Only the first period of `params` is used.
struct OptimizationProblem {
    ModelParams params;
    double v0 = 0.0;
    double p = 0.5;
};

enum class BindingConstraint { Up, Down, None };
std::string_view to_string(BindingConstraint binding) noexcept;

struct OptimalPortfolio {
    double a = 0.0;
    double b = 0.0;
    double v1_up = 0.0;
    double v1_down = 0.0;
    double objective = 0.0;
    BindingConstraint binding = BindingConstraint::None;
};

/// Feasible share interval
///   [-v0 (1+r) / (s0 (u - (1+r))),  v0 (1+r) / (s0 (1+r-d))].
struct ShareBounds {
    double lower = 0.0;
    double upper = 0.0;
};
ShareBounds feasible_shares(const OptimizationProblem& problem);

/// p V1^u + (1 - p) V1^d for a portfolio holding `a` shares funded by v0.
double objective_at(const OptimizationProblem& problem, double a);

/// The objective is linear in a with slope s0 (p u + (1 - p) d - (1 + r)), so
/// the optimum sits at the upper share bound when the real-world drift beats
/// the bank, at the lower bound when it trails, and at a = 0 on a tie
/// (|drift - (1 + r)| <= 1e-12 (1 + r)).
/// Throws Error{ArbitrageModel}, Error{InvalidProbability}, Error{NegativeWealth}.
OptimalPortfolio optimize(const OptimizationProblem& problem);

}  // namespace binomial
