// Serial vs parallel kernels. Argument 0 selects Exec::Serial, 1 Exec::Parallel.

#include "jetframe/analysis.hpp"
#include "jetframe/frames.hpp"

#include <benchmark/benchmark.h>

using namespace jetframe;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_FaaDiBruno(benchmark::State& state) {
    const JetContext ctx(4, 5);
    for (auto _ : state) benchmark::DoNotOptimize(defining_equations_faa_di_bruno(ctx, exec_of(state)));
}

void BM_SolveL(benchmark::State& state) {
    const JetContext ctx(static_cast<unsigned>(state.range(1)), static_cast<unsigned>(state.range(1)) + 1);
    const auto lambda = symbolic_lambda(ctx.n() + 1);
    for (auto _ : state) benchmark::DoNotOptimize(solve_L_coefficients(lambda, ctx, exec_of(state)));
}

void BM_CramerTable(benchmark::State& state) {
    const JetContext ctx(3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(cramer_table(Variant::Delta, 1, ctx, exec_of(state)));
}

void BM_PoleTable(benchmark::State& state) {
    const JetContext ctx(3, 4);
    PoleTableOptions options;
    options.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(verify_pole_table(ctx, options));
}

void BM_Tangency(benchmark::State& state) {
    const JetContext ctx(3, 4);
    const auto eqs = defining_equations_iterated(ctx);
    const auto frame = enumerate_frame(ctx, 1);
    for (auto _ : state) benchmark::DoNotOptimize(check_exact_tangency(frame, eqs, exec_of(state)));
}

void BM_Spanning(benchmark::State& state) {
    const JetContext ctx(3, 4);
    const auto eqs = defining_equations_iterated(ctx);
    const auto frame = enumerate_frame(ctx, 1);
    for (auto _ : state) benchmark::DoNotOptimize(spanning_check(ctx, eqs, frame, 1, 3, 0, Variant::Delta, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_FaaDiBruno)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveL)->Args({0, 2})->Args({1, 2})->Args({0, 3})->Args({1, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CramerTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoleTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Tangency)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spanning)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
