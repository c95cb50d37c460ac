#pragma once

#include <string>
#include <vector>

#include "binomial/lattice_model.hpp"
#include "binomial/pricing.hpp"
#include "binomial/value_lattice.hpp"

namespace binomial {

inline constexpr double kCheckTolerance = 1e-9;

/// Outcome of one executable identity or inequality over a lattice.
///
/// A violation is signed: for an equality it is |lhs - rhs|, for `lhs <= rhs`
/// it is lhs - rhs, so satisfied inequalities contribute negative numbers.
/// `worst_violation` is the maximum over all nodes and all sub-conditions.
struct CheckReport {
    std::string name;
    double worst_violation = 0.0;
    NodeId worst_node;
    std::string worst_condition;  // which sub-condition produced the worst value
    double tolerance = kCheckTolerance;
    bool passed = true;
};

/// Call-minus-put equals S_n - K / (1 + r)^(N - n) at every node.
CheckReport check_european_parity(const ModelParams& params, double strike, int maturity,
                                  double tolerance = kCheckTolerance);

/// Same identity on caller-supplied lattices; the harness entry point used
/// to confirm that corrupted lattices are caught.
CheckReport check_european_parity(const ModelParams& params, double strike,
                                  const ValueLattice& european_call,
                                  const ValueLattice& european_put,
                                  double tolerance = kCheckTolerance);

/// European <= American node-wise; equality for calls (r >= 0) and for puts
/// when r == 0. Custom payoffs only get the inequality.
CheckReport check_e_vs_a(const ModelParams& params, const OptionSpec& spec,
                         double tolerance = kCheckTolerance);

/// S_n - K <= H_call - H_put <= S_n - K / (1 + r)^(N - n).
CheckReport check_american_parity(const ModelParams& params, double strike, int maturity,
                                  double tolerance = kCheckTolerance);

/// Node-wise bounds:
///   S_n - K/(1+r)^(N-n) <= V_call^E = H_call <= S_n
///   K/(1+r)^(N-n) - S_n <= V_put^E <= K/(1+r)^(N-n)
///   (K - S_n)^+ <= H_put <= K
CheckReport check_bounds(const ModelParams& params, double strike, int maturity,
                         double tolerance = kCheckTolerance);

/// All four families for one strike/maturity, in a fixed order.
std::vector<CheckReport> run_all_checks(const ModelParams& params, double strike, int maturity,
                                        double tolerance = kCheckTolerance);

}  // namespace binomial
