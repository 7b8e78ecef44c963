#include <pcoh/cohomology.hpp>
#include <pcoh/complexes.hpp>

#include <benchmark/benchmark.h>

using namespace pcoh;

namespace {

const char* const kAlgebras[] = {"ut2", "m2"};

void BM_AssembleSlice(benchmark::State& state)
{
    AlgebraSpec a = builtin(kAlgebras[state.range(0)]);
    ModuleSpec m = regular_module(a);
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) {
        ComplexSlice s = assemble_slice(Theory::poisson, a, m, n, SignConvention::horizontal_twist);
        benchmark::DoNotOptimize(s.matrix.nnz());
    }
    state.SetLabel(a.name);
}
BENCHMARK(BM_AssembleSlice)->Args({0, 3})->Args({0, 4})->Args({1, 3})->Unit(benchmark::kMillisecond);

void BM_SliceRank(benchmark::State& state)
{
    AlgebraSpec a = builtin(kAlgebras[state.range(0)]);
    ComplexSlice s = assemble_slice(Theory::poisson, a, regular_module(a), static_cast<int>(state.range(1)),
                                    SignConvention::horizontal_twist);
    for (auto _ : state) benchmark::DoNotOptimize(rank(s.matrix));
    state.SetLabel(a.name + " " + std::to_string(s.matrix.rows()) + "x" + std::to_string(s.matrix.cols()));
}
BENCHMARK(BM_SliceRank)->Args({0, 3})->Args({0, 4})->Args({1, 2})->Args({1, 3})->Unit(benchmark::kMillisecond);

void BM_CohomologyUt2(benchmark::State& state)
{
    AlgebraSpec a = builtin("ut2");
    for (auto _ : state)
        benchmark::DoNotOptimize(cohomology_dims(Theory::poisson, a, regular_module(a), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CohomologyUt2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
