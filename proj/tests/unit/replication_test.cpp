#include "binomial/replication.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "binomial/error.hpp"
#include "binomial/oracle.hpp"
#include "binomial/pricing.hpp"
#include "support/random_models.hpp"

namespace binomial {
namespace {

using testing::ModelGenerator;
using testing::reference_model;

Path path_from_code(std::uint32_t code, int n) {
    Path p;
    for (int i = n - 1; i >= 0; --i) p.push_back(((code >> i) & 1U) ? Move::Up : Move::Down);
    return p;
}

FloorLattice american_put_floors(const ModelParams& m, double strike) {
    return exercise_floors(m, OptionSpec::put(strike, ExerciseStyle::American));
}

TEST(SolveOneStepTest, CallPayoffFromReferenceTree) {
    const auto pos = solve_one_step(1.0, reference_model(1), {4.0 / 3.0, 0.0});
    EXPECT_NEAR(pos.a, 8.0 / 9.0, 1e-15);
    EXPECT_NEAR(pos.b, -8.0 / 27.0, 1e-15);
    EXPECT_NEAR(pos.node_value, 16.0 / 27.0, 1e-15);
}

TEST(SolveOneStepTest, RisklessTargetNeedsNoShares) {
    ModelGenerator gen(3);
    for (int i = 0; i < 20; ++i) {
        const auto m = gen.arbitrage_free(1, -0.5, 0.5);
        const auto pos = solve_one_step(1.0, m, {3.0, 3.0});
        EXPECT_EQ(pos.a, 0.0);
        EXPECT_NEAR(pos.b, 3.0 / m.growth(), 1e-14);
        EXPECT_NEAR(pos.node_value, 3.0 / m.growth(), 1e-14);
    }
}

TEST(SolveOneStepTest, ReplicatingTheAssetItself) {
    for (double r : {0.0, 0.1, 0.5, 0.9}) {
        const auto pos = solve_one_step(1.0, validate_model({1.0, 2.0, 0.5, r, 1}), {2.0, 0.5});
        EXPECT_DOUBLE_EQ(pos.a, 1.0);
        EXPECT_DOUBLE_EQ(pos.b, 0.0);
        EXPECT_DOUBLE_EQ(pos.node_value, 1.0);
    }
}

TEST(SolveOneStepProperty, ExactReplicationAndPricingIdentity) {
    ModelGenerator gen(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto m = gen.arbitrage_free(1, -0.3, 0.3);
        const double s = gen.uniform(0.5, 2.0);
        const TargetPair t{gen.uniform(-5.0, 5.0), gen.uniform(-5.0, 5.0)};
        const auto pos = solve_one_step(s, m, t);
        EXPECT_NEAR(pos.a * m.u() * s + pos.b * m.growth(), t.up_value, 1e-10);
        EXPECT_NEAR(pos.a * m.d() * s + pos.b * m.growth(), t.down_value, 1e-10);
        EXPECT_NEAR(pos.node_value, (m.q() * t.up_value + (1.0 - m.q()) * t.down_value) / m.growth(),
                    1e-12);
    }
}

TEST(CheckMinimalityTest, Examples) {
    const auto m = reference_model();
    EXPECT_TRUE(check_minimality(0.0, 0.0, m));
    EXPECT_FALSE(check_minimality(0.1, 0.1, m));
    const double balancing = -0.5 * (m.growth() - m.d()) / (m.u() - m.growth());
    try {
        check_minimality(0.5, balancing, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativePerturbation);
    }
}

TEST(CheckMinimalityProperty, OnlyZeroPerturbationUnderNoArbitrage) {
    ModelGenerator gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto m = gen.arbitrage_free(1);
        const double e1 = gen.coin() ? 0.0 : gen.uniform(1e-6, 1.0);
        const double e2 = gen.coin() ? 0.0 : gen.uniform(1e-6, 1.0);
        EXPECT_EQ(check_minimality(e1, e2, m), e1 == 0.0 && e2 == 0.0);
    }
}

TEST(SuperhedgeTest, AmericanPutFloorsBindEverywhere) {
    const auto m = reference_model(2);
    const auto plan = superhedge(m, american_put_floors(m, 2.5));
    EXPECT_NEAR(plan.values[(NodeId{0, 0})], 1.5, 1e-12);
    EXPECT_NEAR(plan.values[(NodeId{1, 1})], 0.5, 1e-12);
    EXPECT_NEAR(plan.values[(NodeId{1, 0})], 2.0, 1e-12);
    EXPECT_NEAR(plan.continuation[(NodeId{0, 0})], 2.0 / 3.0, 1e-12);
}

TEST(SuperhedgeTest, LeafOnlyCallFloorsGiveOptionPremium) {
    const auto m = reference_model(3);
    FloorLattice floors(3);
    for (int n = 0; n < 3; ++n) {
        for (int j = 0; j <= n; ++j) floors.set({n, j}, 0.0);
    }
    for (int j = 0; j <= 3; ++j) floors.set({3, j}, std::max(asset_price(m, {3, j}) - 2.5, 0.0));
    const auto plan = superhedge(m, floors);
    EXPECT_NEAR(plan.values.root(), 352.0 / 729.0, 1e-12);
    EXPECT_NEAR(plan.values.root(), 0.48, 5e-3);
}

TEST(SuperhedgeTest, ConstantFloorDominates) {
    ModelGenerator gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = gen.arbitrage_free(gen.integer(1, 8));
        FloorLattice floors(m.n_periods());
        const double c = gen.uniform(0.1, 5.0);
        for_each_node(m.n_periods(), [&](NodeId node) { floors.set(node, c); });
        const auto plan = superhedge(m, floors);
        for_each_node(m.n_periods(), [&](NodeId node) { EXPECT_DOUBLE_EQ(plan.values[node], c); });
    }
}

TEST(SuperhedgeTest, Errors) {
    const auto bad = validate_model({1.0, 1.2, 0.9, 0.5, 2});
    FloorLattice floors(2);
    for (int j = 0; j <= 2; ++j) floors.set({2, j}, 1.0);
    try {
        superhedge(bad, floors);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ArbitrageModel);
    }

    FloorLattice missing_leaf(2);
    missing_leaf.set({2, 0}, 1.0);
    missing_leaf.set({2, 2}, 1.0);
    try {
        superhedge(reference_model(2), missing_leaf);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompleteFloors);
    }

    try {
        superhedge(reference_model(3), floors);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompleteFloors);
    }
}

TEST(SuperhedgeTest, PositionsFinanceNodeValue) {
    const auto m = reference_model(3);
    const auto plan = superhedge(m, american_put_floors(m, 2.5));
    for (int n = 0; n < 3; ++n) {
        for (int j = 0; j <= n; ++j) {
            const NodeId node{n, j};
            const auto& pos = plan.positions[node];
            EXPECT_NEAR(pos.a * asset_price(m, node) + pos.b, plan.values[node], 1e-12);
            EXPECT_NEAR(pos.node_value, plan.values[node], 1e-15);
        }
    }
}

TEST(RollHedgeTest, EuropeanCallTerminalValues) {
    const auto m = reference_model(3);
    const auto floors = exercise_floors(m, OptionSpec::call(2.5, ExerciseStyle::European));
    const auto plan = superhedge(m, floors);

    const auto uuu = roll_hedge(plan, Path{Move::Up, Move::Up, Move::Up});
    ASSERT_EQ(uuu.achieved.size(), 4U);
    EXPECT_NEAR(uuu.achieved.back(), 5.5, 1e-12);
    EXPECT_EQ(uuu.nodes.back(), (NodeId{3, 3}));

    const auto ddd = roll_hedge(plan, Path{Move::Down, Move::Down, Move::Down});
    EXPECT_NEAR(ddd.achieved.back(), 0.0, 1e-12);
    for (double s : uuu.surplus) EXPECT_NEAR(s, 0.0, 1e-12);
}

TEST(RollHedgeTest, AmericanPutNeverBelowFloor) {
    const auto m = reference_model(2);
    const auto floors = american_put_floors(m, 2.5);
    const auto plan = superhedge(m, floors);
    for (std::uint32_t code = 0; code < 4; ++code) {
        const auto roll = roll_hedge(plan, path_from_code(code, 2));
        for (std::size_t i = 0; i < roll.nodes.size(); ++i) {
            EXPECT_GE(roll.achieved[i], floors[roll.nodes[i]] - 1e-12);
        }
    }
}

TEST(RollHedgeTest, PathLengthMismatch) {
    const auto m = reference_model(2);
    const auto plan = superhedge(m, american_put_floors(m, 2.5));
    try {
        roll_hedge(plan, Path{Move::Up});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PathLengthMismatch);
    }
}

TEST(SuperhedgeProperty, DominanceAndSurplusMonotonicity) {
    ModelGenerator gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int N = gen.integer(1, 8);
        const auto m = gen.arbitrage_free(N);
        const auto floors = gen.floors(N);
        const auto plan = superhedge(m, floors);
        for_each_node(N, [&](NodeId node) {
            if (floors.has_floor(node)) EXPECT_GE(plan.values[node], floors[node]);
        });
        for (std::uint32_t code = 0; code < (1U << N); ++code) {
            const auto roll = roll_hedge(plan, path_from_code(code, N));
            for (std::size_t i = 0; i < roll.surplus.size(); ++i) {
                const double scale = 1e-10 * std::max(1.0, std::abs(roll.achieved[i]));
                EXPECT_GE(roll.surplus[i], -scale);
                if (i > 0) EXPECT_GE(roll.surplus[i], roll.surplus[i - 1] - scale);
            }
        }
    }
}

TEST(SuperhedgeProperty, MinimalityUnderRootReduction) {
    ModelGenerator gen(29);
    for (int trial = 0; trial < 60; ++trial) {
        const int N = gen.integer(1, 10);
        const auto m = gen.arbitrage_free(N);
        const auto floors = gen.floors(N);
        const auto plan = superhedge(m, floors);
        EXPECT_GE(oracle::oracle_hedge_replay(plan, floors), -1e-10);
        for (double eps : {1e-3, 1e-6}) {
            const auto reduced = with_root_value(plan, plan.values.root() - eps);
            EXPECT_LT(oracle::oracle_hedge_replay(reduced, floors), 0.0) << "eps=" << eps;
        }
    }
}

TEST(SuperhedgeProperty, MatchesFullTreeOracle) {
    ModelGenerator gen(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int N = gen.integer(0, 10);
        const auto m = gen.arbitrage_free(N);
        const auto floors = gen.floors(N);
        const auto plan = superhedge(m, floors);
        const auto full = oracle::oracle_superhedge(m, floors);
        for (oracle::PrefixIndex i = 0; i < full.size(); ++i) {
            EXPECT_NEAR(plan.values[oracle::prefix_node(i)], full[i], 1e-10);
        }
    }
}

}  // namespace
}  // namespace binomial
