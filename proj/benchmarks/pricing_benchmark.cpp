#include <benchmark/benchmark.h>

#include "binomial/analytics.hpp"
#include "binomial/oracle.hpp"
#include "binomial/pricing.hpp"
#include "binomial/replication.hpp"

namespace {

using namespace binomial;

ModelParams model(int periods) { return validate_model({100.0, 1.01, 0.99, 0.001, periods}); }

void BM_PriceEuropean(benchmark::State& state) {
    const auto m = model(static_cast<int>(state.range(0)));
    const auto spec = OptionSpec::call(100.0, ExerciseStyle::European);
    for (auto _ : state) benchmark::DoNotOptimize(price(m, spec).root());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PriceEuropean)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

void BM_PriceAmerican(benchmark::State& state) {
    const auto m = model(static_cast<int>(state.range(0)));
    const auto spec = OptionSpec::put(100.0, ExerciseStyle::American);
    for (auto _ : state) benchmark::DoNotOptimize(price(m, spec).root());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PriceAmerican)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

void BM_AdviseExercise(benchmark::State& state) {
    const auto m = model(static_cast<int>(state.range(0)));
    const auto spec = OptionSpec::put(100.0, ExerciseStyle::American);
    const Path path(static_cast<std::size_t>(state.range(0) / 2), Move::Down);
    for (auto _ : state) benchmark::DoNotOptimize(advise_exercise(m, spec, path).recommendation);
}
BENCHMARK(BM_AdviseExercise)->Arg(64)->Arg(512);

void BM_RunAllChecks(benchmark::State& state) {
    const auto m = model(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_all_checks(m, 100.0, m.n_periods()).size());
}
BENCHMARK(BM_RunAllChecks)->Arg(64)->Arg(512);

void BM_OracleEuropean(benchmark::State& state) {
    const auto m = model(static_cast<int>(state.range(0)));
    const auto spec = OptionSpec::call(100.0, ExerciseStyle::European);
    for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_european(m, spec));
}
BENCHMARK(BM_OracleEuropean)->DenseRange(6, 14, 4);

void BM_HedgeReplay(benchmark::State& state) {
    const auto m = model(static_cast<int>(state.range(0)));
    const auto spec = OptionSpec::put(100.0, ExerciseStyle::American);
    const auto plan = superhedge(m, exercise_floors(m, spec));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_hedge_replay(m, plan, spec));
}
BENCHMARK(BM_HedgeReplay)->DenseRange(6, 14, 4);

}  // namespace
BENCHMARK_MAIN();
