#include "mflab/ct_toolkit.hpp"
#include "mflab/endo_probe.hpp"
#include "mflab/parse.hpp"

#include <benchmark/benchmark.h>

using namespace mflab;

namespace {

FactoredEquation triple_eq()
{
    auto ctx = make_ring({"x", "y"}, 32003);
    return make_equation(ctx, {parse_poly("x", ctx), parse_poly("y", ctx),
                               parse_poly("x+y", ctx)});
}

void bm_truncation(benchmark::State& state)
{
    auto eq = triple_eq();
    int D = static_cast<int>(state.range(0));
    for (auto _ : state) {
        TruncationBasis t(eq.ctx, eq.product(), D, 512);
        benchmark::DoNotOptimize(t.dim());
    }
}
BENCHMARK(bm_truncation)->Arg(8)->Arg(12)->Arg(16);

void bm_ext_pair(benchmark::State& state)
{
    auto eq = triple_eq();
    auto sched = default_schedule(eq.ctx);
    MatrixFactorization m = s_ideal({eq, {1}});
    PresentedModule n = PresentedModule::from_mf(s_ideal({eq, {2}}));
    for (auto _ : state) {
        ExtResult r = ext_periodic(m, n, 1, sched);
        benchmark::DoNotOptimize(r.stable_dim);
    }
}
BENCHMARK(bm_ext_pair);

void bm_ext_cocycle(benchmark::State& state)
{
    auto eq = triple_eq();
    MatrixFactorization m = s_ideal({eq, {1}});
    MatrixFactorization n = s_ideal({eq, {2}});
    for (auto _ : state) {
        ExtResult r = ext1_cocycle(n, m, 4);
        benchmark::DoNotOptimize(r.stable_dim);
    }
}
BENCHMARK(bm_ext_cocycle);

void bm_ct_check(benchmark::State& state)
{
    auto eq = triple_eq();
    for (auto _ : state) {
        EqWorkspace ws(eq, default_schedule(eq.ctx), 42);
        CTReport rep = ct_check(ws, {1, 2, 3});
        benchmark::DoNotOptimize(rep.overall);
    }
}
BENCHMARK(bm_ct_check)->Unit(benchmark::kMillisecond);

void bm_end_ring(benchmark::State& state)
{
    auto eq = triple_eq();
    PresentedModule r = PresentedModule::from_mf(trivial_mf(eq.ctx, eq.product()));
    int D = static_cast<int>(state.range(0));
    for (auto _ : state) {
        EndRing er = end_ring(r, D);
        benchmark::DoNotOptimize(er.closed);
    }
}
BENCHMARK(bm_end_ring)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
