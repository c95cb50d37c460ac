#include "binomial/replication.hpp"

#include <algorithm>
#include <cmath>

#include "binomial/error.hpp"

namespace binomial {

HedgePosition solve_one_step(double s, const ModelParams& params, TargetPair targets) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidModel, "asset price must be > 0");
    const double u = params.u();
    const double d = params.d();
    const double spread = u - d;
    const double A = targets.up_value;
    const double B = targets.down_value;

    HedgePosition pos;
    pos.a = (A - B) / (spread * s);
    pos.b = (B * u - A * d) / (spread * params.growth());
    pos.node_value = pos.a * s + pos.b;
    return pos;
}

bool check_minimality(double eps_up, double eps_down, const ModelParams& params) {
    if (eps_up < 0.0 || eps_down < 0.0 || std::isnan(eps_up) || std::isnan(eps_down)) {
        throw Error(ErrorCode::NegativePerturbation, "perturbations must be >= 0");
    }
    const double up_term = eps_up * (params.growth() - params.d());
    const double down_term = eps_down * (params.u() - params.growth());
    const double scale = std::abs(up_term) + std::abs(down_term);
    return std::abs(up_term + down_term) <= 1e-12 * scale;
}

void FloorLattice::set(NodeId node, double floor) {
    if (!in_lattice(node, n_periods())) {
        throw Error(ErrorCode::NodeOutOfRange, "floor node " + to_string(node) + " outside lattice");
    }
    if (std::isnan(floor) || floor == std::numeric_limits<double>::infinity()) {
        throw Error(ErrorCode::IncompleteFloors, "floor at " + to_string(node) + " must be finite or absent");
    }
    floors_[node] = floor;
}

HedgePlan superhedge(const ModelParams& params, const FloorLattice& floors) {
    require_arbitrage_free(params);
    const int N = params.n_periods();
    if (floors.n_periods() != N) {
        throw Error(ErrorCode::IncompleteFloors,
                    "floor lattice has " + std::to_string(floors.n_periods()) +
                        " periods, model has " + std::to_string(N));
    }
    for (int j = 0; j <= N; ++j) {
        if (!floors.has_floor({N, j})) {
            throw Error(ErrorCode::IncompleteFloors,
                        "terminal node " + to_string(NodeId{N, j}) + " has no floor");
        }
    }

    // The recursion runs in extended precision and rounds once on storage, so
    // deep lattices with large asset prices stay within a few ulps.
    using Wide = long double;
    const Wide u = params.u();
    const Wide d = params.d();
    const Wide growth = 1.0L + params.r();
    const Wide q = (growth - d) / (u - d);

    HedgePlan plan{params,
                   ValueLattice{NodeField<double>(N, 0.0), NodeField<bool>(N, false)},
                   NodeField<HedgePosition>(N, HedgePosition{}),
                   NodeField<double>(N, 0.0)};
    NodeField<Wide> wide(N, 0.0L);
    const AssetPrices prices(params);

    for (int j = 0; j <= N; ++j) {
        wide[{N, j}] = floors[{N, j}];
        plan.values.values[{N, j}] = floors[{N, j}];
        plan.continuation[{N, j}] = floors[{N, j}];
    }

    // Levels are strictly sequential; nodes within one level are independent.
    for (int n = N - 1; n >= 0; --n) {
        for (int j = 0; j <= n; ++j) {
            const NodeId node{n, j};
            const Wide up = wide[node.up()];
            const Wide down = wide[node.down()];
            const Wide cont = (q * up + (1.0L - q) * down) / growth;
            const Wide value = std::max<Wide>(floors[node], cont);
            wide[node] = value;
            plan.values.values[node] = static_cast<double>(value);
            plan.continuation[node] = static_cast<double>(cont);

            const Wide s = prices(node);
            const Wide a = (up - down) / ((u - d) * s);
            plan.positions[node] = HedgePosition{static_cast<double>(a), static_cast<double>(value - a * s),
                                                 static_cast<double>(value)};
        }
    }
    return plan;
}

HedgePlan with_root_value(HedgePlan plan, double root_value) {
    const NodeId root{0, 0};
    const double shift = root_value - plan.values.values[root];
    plan.values.values[root] = root_value;
    if (plan.model.n_periods() > 0) {
        plan.positions[root].b += shift;
        plan.positions[root].node_value = root_value;
    }
    return plan;
}

RollResult roll_hedge(const HedgePlan& plan, std::span<const Move> path) {
    const auto& params = plan.model;
    const int N = params.n_periods();
    if (static_cast<int>(path.size()) != N) {
        throw Error(ErrorCode::PathLengthMismatch,
                    "path has " + std::to_string(path.size()) + " moves, plan has " +
                        std::to_string(N) + " periods");
    }

    RollResult out;
    out.nodes.reserve(path.size() + 1);
    out.achieved.reserve(path.size() + 1);
    out.surplus.reserve(path.size() + 1);

    NodeId node{0, 0};
    double wealth = plan.values.values[node];
    out.nodes.push_back(node);
    out.achieved.push_back(wealth);
    out.surplus.push_back(wealth - plan.values.values[node]);

    for (const Move m : path) {
        const double shares = plan.positions[node].a;
        const double bank = wealth - shares * asset_price(params, node);
        node = (m == Move::Up) ? node.up() : node.down();
        wealth = shares * asset_price(params, node) + bank * params.growth();
        out.nodes.push_back(node);
        out.achieved.push_back(wealth);
        out.surplus.push_back(wealth - plan.values.values[node]);
    }
    return out;
}

}  // namespace binomial
