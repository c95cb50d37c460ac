#include "binomial/optimization.hpp"

#include <cmath>

#include "binomial/error.hpp"

namespace binomial {

std::string_view to_string(BindingConstraint binding) noexcept {
    switch (binding) {
        case BindingConstraint::Up: return "up";
        case BindingConstraint::Down: return "down";
        case BindingConstraint::None: return "none";
    }
    return "unknown";
}

namespace {

void validate(const OptimizationProblem& problem) {
    require_arbitrage_free(problem.params);
    if (!(problem.p > 0.0 && problem.p < 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "p must lie strictly between 0 and 1");
    }
    if (!(problem.v0 >= 0.0) || !std::isfinite(problem.v0)) {
        throw Error(ErrorCode::NegativeWealth, "initial wealth v0 must be a finite number >= 0");
    }
}

OptimalPortfolio evaluate(const OptimizationProblem& problem, double a, BindingConstraint binding) {
    const auto& m = problem.params;
    OptimalPortfolio out;
    out.a = a;
    out.b = problem.v0 - a * m.s0();
    out.v1_up = a * m.u() * m.s0() + out.b * m.growth();
    out.v1_down = a * m.d() * m.s0() + out.b * m.growth();
    out.objective = problem.p * out.v1_up + (1.0 - problem.p) * out.v1_down;
    out.binding = binding;
    return out;
}

}  // namespace

ShareBounds feasible_shares(const OptimizationProblem& problem) {
    validate(problem);
    const auto& m = problem.params;
    const double wealth = problem.v0 * m.growth();
    return {-wealth / (m.s0() * (m.u() - m.growth())), wealth / (m.s0() * (m.growth() - m.d()))};
}

double objective_at(const OptimizationProblem& problem, double a) {
    return evaluate(problem, a, BindingConstraint::None).objective;
}

OptimalPortfolio optimize(const OptimizationProblem& problem) {
    const ShareBounds bounds = feasible_shares(problem);
    const auto& m = problem.params;
    const double drift = problem.p * m.u() + (1.0 - problem.p) * m.d();
    const double excess = drift - m.growth();

    if (problem.v0 == 0.0 || std::abs(excess) <= 1e-12 * m.growth()) {
        return evaluate(problem, 0.0, BindingConstraint::None);
    }
    if (excess > 0.0) return evaluate(problem, bounds.upper, BindingConstraint::Down);
    return evaluate(problem, bounds.lower, BindingConstraint::Up);
}

}  // namespace binomial
