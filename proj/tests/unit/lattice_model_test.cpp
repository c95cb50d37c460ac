#include "binomial/lattice_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "binomial/error.hpp"
#include "support/random_models.hpp"

namespace binomial {
namespace {

using testing::ModelGenerator;
using testing::reference_model;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected binomial::Error";
    return ErrorCode::TreeTooDeep;
}

TEST(ValidateModelTest, ReferenceModelIsArbitrageFree) {
    const auto m = reference_model(3);
    EXPECT_TRUE(m.arbitrage_free());
    EXPECT_DOUBLE_EQ(m.q(), 2.0 / 3.0);
    EXPECT_EQ(m.n_periods(), 3);
}

TEST(ValidateModelTest, DegenerateTreeRejected) {
    EXPECT_EQ(code_of([] { validate_model({1.0, 1.0, 1.0, 0.0, 1}); }), ErrorCode::InvalidModel);
}

TEST(ValidateModelTest, RejectsEachViolatedCondition) {
    try {
        validate_model({0.0, 2.0, 0.5, 0.1, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("s0"), std::string::npos);
    }
    try {
        validate_model({1.0, 0.5, 2.0, 0.1, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("u must be > d"), std::string::npos);
    }
    try {
        validate_model({1.0, 2.0, 0.5, -1.0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("r must be > -1"), std::string::npos);
    }
    EXPECT_EQ(code_of([] { validate_model({1.0, 2.0, -0.5, 0.1, 1}); }), ErrorCode::InvalidModel);
    EXPECT_EQ(code_of([] { validate_model({1.0, 2.0, 0.5, 0.1, -1}); }), ErrorCode::InvalidModel);
    EXPECT_EQ(code_of([] { validate_model({NAN, 2.0, 0.5, 0.1, 1}); }), ErrorCode::InvalidModel);
}

TEST(ValidateModelTest, HighRateAdmitsArbitrage) {
    const auto m = validate_model({1.0, 1.2, 0.9, 0.5, 1});
    EXPECT_FALSE(m.arbitrage_free());
    EXPECT_NE(m.arbitrage_violation().find("u=1.2 <= 1+r=1.5"), std::string::npos);
}

TEST(AssetPriceTest, ReferenceTreeNodes) {
    const auto m = reference_model(3);
    EXPECT_DOUBLE_EQ(asset_price(m, {2, 2}), 4.0);
    EXPECT_DOUBLE_EQ(asset_price(m, {0, 0}), 1.0);
    EXPECT_DOUBLE_EQ(asset_price(m, {3, 1}), 0.5);
    EXPECT_DOUBLE_EQ(asset_price(m, {3, 3}), 8.0);
}

TEST(AssetPriceTest, OutOfRange) {
    const auto m = reference_model(3);
    EXPECT_EQ(code_of([&] { asset_price(m, {4, 0}); }), ErrorCode::NodeOutOfRange);
    EXPECT_EQ(code_of([&] { asset_price(m, {2, 3}); }), ErrorCode::NodeOutOfRange);
    EXPECT_EQ(code_of([&] { asset_price(m, {1, -1}); }), ErrorCode::NodeOutOfRange);
}

TEST(AssetPriceTest, RecombinationConsistency) {
    ModelGenerator gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = gen.arbitrage_free(gen.integer(1, 12));
        for (int n = 0; n < m.n_periods(); ++n) {
            for (int j = 0; j <= n; ++j) {
                const double s = asset_price(m, {n, j});
                EXPECT_NEAR(s * m.u(), asset_price(m, {n + 1, j + 1}), 1e-12 * s * m.u());
                EXPECT_NEAR(s * m.d(), asset_price(m, {n + 1, j}), 1e-12 * s * m.d());
            }
        }
    }
}

TEST(NodeTest, PathNavigation) {
    const Path path{Move::Up, Move::Down, Move::Up};
    EXPECT_EQ(node_after(path), (NodeId{3, 2}));
    EXPECT_EQ(to_string(path), "udu");
    EXPECT_EQ(node_after(Path{}), (NodeId{0, 0}));
}

TEST(FindArbitrageTest, NoneForReferenceModel) {
    EXPECT_FALSE(find_arbitrage(reference_model()).has_value());
}

TEST(FindArbitrageTest, ShortStockWhenRateBeatsUp) {
    const auto w = find_arbitrage(validate_model({1.0, 1.2, 0.9, 0.5, 1}));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->a, -1.0);
    EXPECT_EQ(w->b, 1.0);
    EXPECT_NEAR(w->v1_up, 0.3, 1e-12);
    EXPECT_NEAR(w->v1_down, 0.6, 1e-12);
}

TEST(FindArbitrageTest, LongStockWhenDownBeatsRate) {
    const auto w = find_arbitrage(validate_model({1.0, 2.0, 1.5, 0.0, 1}));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->a, 1.0);
    EXPECT_EQ(w->b, -1.0);
    EXPECT_DOUBLE_EQ(w->v1_up, 1.0);
    EXPECT_DOUBLE_EQ(w->v1_down, 0.5);
}

TEST(FindArbitrageTest, BoundaryCasesAdmitArbitrage) {
    // d == 1 + r: long leg pays zero down, positive up.
    const auto low = find_arbitrage(validate_model({1.0, 2.0, 1.25, 0.25, 1}));
    ASSERT_TRUE(low.has_value());
    EXPECT_EQ(low->v1_down, 0.0);
    EXPECT_GT(low->v1_up, 0.0);
    // u == 1 + r: short leg pays zero up, positive down.
    const auto high = find_arbitrage(validate_model({1.0, 1.25, 0.5, 0.25, 1}));
    ASSERT_TRUE(high.has_value());
    EXPECT_EQ(high->v1_up, 0.0);
    EXPECT_GT(high->v1_down, 0.0);
}

TEST(FindArbitrageTest, RequireArbitrageFreeReportsWitness) {
    try {
        require_arbitrage_free(validate_model({1.0, 1.2, 0.9, 0.5, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ArbitrageModel);
        const std::string msg = e.what();
        EXPECT_NE(msg.find("a=-1"), std::string::npos);
        EXPECT_NE(msg.find("b=1"), std::string::npos);
    }
}

TEST(LatticeModelProperty, RiskNeutralIdentity) {
    ModelGenerator gen(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto m = gen.arbitrage_free(1, -0.5, 0.5);
        EXPECT_GT(m.q(), 0.0);
        EXPECT_LT(m.q(), 1.0);
        EXPECT_NEAR(m.q() * m.u() + (1.0 - m.q()) * m.d(), m.growth(), 1e-12);
    }
}

// Randomized grid straddling both boundaries: the witness exists exactly on
// the arbitrage side and always satisfies its invariants.
TEST(LatticeModelProperty, WitnessIffArbitrage) {
    ModelGenerator gen(13);
    for (int trial = 0; trial < 2000; ++trial) {
        const double r = gen.uniform(-0.3, 0.3);
        const double growth = 1.0 + r;
        double d = growth * gen.uniform(0.5, 1.5);
        double u = growth * gen.uniform(0.5, 1.5);
        if (trial % 10 == 0) d = growth;  // land exactly on a boundary now and then
        if (trial % 10 == 5) u = growth;
        if (u <= d || d <= 0.0) continue;
        const auto m = validate_model({gen.uniform(0.5, 3.0), u, d, r, 1});
        const auto w = find_arbitrage(m);
        EXPECT_EQ(!w.has_value(), m.arbitrage_free());
        EXPECT_EQ(m.arbitrage_free(), d < growth && growth < u);
        if (w) {
            EXPECT_EQ(w->a * m.s0() + w->b, 0.0);
            EXPECT_GE(std::min(w->v1_up, w->v1_down), 0.0);
            EXPECT_GT(std::max(w->v1_up, w->v1_down), 0.0);
            EXPECT_EQ(std::abs(w->a), 1.0);
        }
    }
}

}  // namespace
}  // namespace binomial
