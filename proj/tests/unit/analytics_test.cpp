#include "binomial/analytics.hpp"

#include <gtest/gtest.h>

#include "binomial/error.hpp"
#include "support/random_models.hpp"

namespace binomial {
namespace {

using testing::ModelGenerator;
using testing::reference_model;

TEST(EuropeanParityTest, ReferenceRoot) {
    const auto m = reference_model(2);
    const auto call = price_european(m, OptionSpec::call(2.5, ExerciseStyle::European));
    const auto put = price_european(m, OptionSpec::put(2.5, ExerciseStyle::European));
    EXPECT_NEAR(call.root() - put.root(), -1.0 / 9.0, 1e-12);
    EXPECT_NEAR(1.0 - 2.5 / 2.25, -1.0 / 9.0, 1e-15);

    const auto report = check_european_parity(m, 2.5, 2);
    EXPECT_TRUE(report.passed);
    EXPECT_LE(report.worst_violation, 1e-12);
    EXPECT_EQ(report.name, "european-parity");
}

TEST(EuropeanParityTest, ZeroStrike) {
    const auto report = check_european_parity(reference_model(3), 0.0, 3);
    EXPECT_TRUE(report.passed);
}

TEST(EuropeanParityTest, CorruptedLatticeIsCaught) {
    const auto m = reference_model(3);
    auto call = price_european(m, OptionSpec::call(2.5, ExerciseStyle::European));
    const auto put = price_european(m, OptionSpec::put(2.5, ExerciseStyle::European));
    call.values[(NodeId{2, 1})] += 0.25;
    const auto report = check_european_parity(m, 2.5, call, put);
    EXPECT_FALSE(report.passed);
    EXPECT_EQ(report.worst_node, (NodeId{2, 1}));
    EXPECT_NEAR(report.worst_violation, 0.25, 1e-12);
}

TEST(EVsATest, CallsCoincideWhenRateNonnegative) {
    const auto m = reference_model(3);
    const auto report = check_e_vs_a(m, OptionSpec::call(2.5, ExerciseStyle::American));
    EXPECT_TRUE(report.passed);
    EXPECT_NEAR(price_american(m, OptionSpec::call(2.5, ExerciseStyle::American)).root(),
                price_european(m, OptionSpec::call(2.5, ExerciseStyle::European)).root(), 1e-12);
}

TEST(EVsATest, PutsCoincideAtZeroRate) {
    const auto m = validate_model({1.0, 2.0, 0.5, 0.0, 2});
    const auto e = price_european(m, OptionSpec::put(2.5, ExerciseStyle::European));
    const auto a = price_american(m, OptionSpec::put(2.5, ExerciseStyle::American));
    for_each_node(2, [&](NodeId node) { EXPECT_NEAR(e[node], a[node], 1e-12); });
    EXPECT_NEAR(a.root(), 5.0 / 3.0, 1e-12);
    EXPECT_TRUE(check_e_vs_a(m, OptionSpec::put(2.5, ExerciseStyle::European)).passed);
}

TEST(EVsATest, PutStrictlyBelowAmericanWhenRatePositive) {
    const auto m = reference_model(2);
    const auto report = check_e_vs_a(m, OptionSpec::put(2.5, ExerciseStyle::European));
    EXPECT_TRUE(report.passed);
    // Only the inequality is asserted, so the slack shows up as a negative violation.
    EXPECT_LT(report.worst_violation, 0.0 + 1e-12);
    EXPECT_GT(price_american(m, OptionSpec::put(2.5, ExerciseStyle::American)).root(),
              price_european(m, OptionSpec::put(2.5, ExerciseStyle::European)).root());
}

TEST(AmericanParityTest, ReferenceRoot) {
    const auto m = reference_model(2);
    const double hc = price_american(m, OptionSpec::call(2.5, ExerciseStyle::American)).root();
    const double hp = price_american(m, OptionSpec::put(2.5, ExerciseStyle::American)).root();
    EXPECT_NEAR(hc - hp, 8.0 / 27.0 - 1.5, 1e-12);
    EXPECT_GE(hc - hp, 1.0 - 2.5);
    EXPECT_LE(hc - hp, 1.0 - 2.5 / 2.25);
    EXPECT_TRUE(check_american_parity(m, 2.5, 2).passed);
    EXPECT_TRUE(check_american_parity(m, 1e-9, 2).passed);
}

TEST(BoundsTest, ReferenceValues) {
    const auto m = reference_model(3);
    EXPECT_TRUE(check_bounds(m, 2.5, 3).passed);
    EXPECT_TRUE(check_bounds(m, 2.5, 2).passed);
    EXPECT_TRUE(check_bounds(m, 0.0, 3).passed);
    const double lower = 1.0 - 2.5 / 3.375;
    EXPECT_NEAR(lower, 0.259, 1e-3);
    EXPECT_LE(lower, 352.0 / 729.0);
}

TEST(ChecksTest, RefuseNegativeRateAndArbitrage) {
    const auto negative = validate_model({1.0, 1.2, 0.8, -0.1, 2});
    ASSERT_TRUE(negative.arbitrage_free());
    for (auto run : {+[](const ModelParams& m) { check_european_parity(m, 1.0, 2); },
                     +[](const ModelParams& m) { check_american_parity(m, 1.0, 2); },
                     +[](const ModelParams& m) { check_bounds(m, 1.0, 2); },
                     +[](const ModelParams& m) {
                         check_e_vs_a(m, OptionSpec::call(1.0, ExerciseStyle::European));
                     }}) {
        try {
            run(negative);
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::RequiresNonnegativeRate);
        }
        try {
            run(validate_model({1.0, 1.2, 0.9, 0.5, 2}));
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ArbitrageModel);
        }
    }
}

TEST(ChecksTest, RunAllOrder) {
    const auto reports = run_all_checks(reference_model(3), 2.5, 2);
    ASSERT_EQ(reports.size(), 5U);
    EXPECT_EQ(reports[0].name, "european-parity");
    EXPECT_EQ(reports[1].name, "e-vs-a-call");
    EXPECT_EQ(reports[2].name, "e-vs-a-put");
    EXPECT_EQ(reports[3].name, "american-parity");
    EXPECT_EQ(reports[4].name, "bounds");
    for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.name;
}

TEST(ChecksProperty, RandomizedModelsPass) {
    ModelGenerator gen(61);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = gen.integer(1, 12);
        const auto m = trial % 5 == 0 ? validate_model({gen.uniform(0.5, 2.0), gen.uniform(1.01, 4.0),
                                                        gen.uniform(0.05, 0.99), 0.0, N})
                                      : gen.arbitrage_free(N);
        const double strike = gen.uniform(0.01, 4.0) * m.s0();
        for (const auto& r : run_all_checks(m, strike, N)) {
            EXPECT_TRUE(r.passed) << r.name << " worst=" << r.worst_violation << " at "
                                  << to_string(r.worst_node) << " " << r.worst_condition;
        }
    }
}

}  // namespace
}  // namespace binomial
