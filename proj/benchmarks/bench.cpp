#include <benchmark/benchmark.h>

#include <random>

#include "shifteq/decide.hpp"
#include "shifteq/forms.hpp"
#include "shifteq/intlin.hpp"
#include "shifteq/qorder.hpp"

using namespace shifteq;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound)
{
    IntMatrix m(n, n);
    std::uniform_int_distribution<long> d(-bound, bound);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Int(d(rng));
    return m;
}

void bm_smith(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    std::vector<IntMatrix> inputs;
    for (int i = 0; i < 32; ++i)
        inputs.push_back(random_matrix(rng, static_cast<std::size_t>(state.range(0)), 50));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(smith_normal_form(inputs[i % inputs.size()]));
        ++i;
    }
}
BENCHMARK(bm_smith)->Arg(4)->Arg(6)->Arg(8);

void bm_charpoly(benchmark::State& state)
{
    std::mt19937_64 rng(2);
    IntMatrix m = random_matrix(rng, 8, 1000);
    for (auto _ : state) benchmark::DoNotOptimize(charpoly(m));
}
BENCHMARK(bm_charpoly);

void bm_witness_search(benchmark::State& state)
{
    IntMatrix a{{0, -6}, {1, 0}}, b{{0, -3}, {2, 0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(search_witness(a, b, SearchBounds{6, 4}));
}
BENCHMARK(bm_witness_search);

void bm_reduce_indefinite(benchmark::State& state)
{
    BinaryQuadraticForm f{12345, 23456, -34567};
    for (auto _ : state) benchmark::DoNotOptimize(reduce(f));
}
BENCHMARK(bm_reduce_indefinite);

void bm_scan_row(benchmark::State& state)
{
    long c = -100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(iso_test_R_J0(Int(c)));
        benchmark::DoNotOptimize(iso_test_J0_J1(Int(c)));
        if (++c > 100) c = -100;
    }
}
BENCHMARK(bm_scan_row);

void bm_pell(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(fundamental_solution_pell(Int(state.range(0))));
}
BENCHMARK(bm_pell)->Arg(94)->Arg(9949);

void bm_decide_quadratic(benchmark::State& state)
{
    IntMatrix a{{19, 5}, {4, 1}}, b{{19, 4}, {5, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(decide_matrices(a, b));
}
BENCHMARK(bm_decide_quadratic);

}  // namespace

BENCHMARK_MAIN();
