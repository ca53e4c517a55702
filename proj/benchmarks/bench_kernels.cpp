#include <benchmark/benchmark.h>

#include <vector>

#include "uniexp/models.hpp"
#include "uniexp/musps.hpp"
#include "uniexp/sps.hpp"

using namespace uniexp;

namespace {

std::vector<double> point_mass(int d, int at) {
    std::vector<double> v(d, 0.0);
    v[at] = 1.0;
    return v;
}

void bm_spmv(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto model = build_sir(n, 0.01, 0.25);
    const auto kernel = shift(model.Q, 1.0);
    const auto v = point_mass(model.Q.dim(), model.map.index_of({n - 1, 1, 0}));
    std::vector<double> out(model.Q.dim());
    for (auto _ : state) {
        left_multiply(v, kernel.P, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * kernel.P.nnz());
}
BENCHMARK(bm_spmv)->Arg(20)->Arg(50)->Arg(100);

void bm_sps(benchmark::State& state) {
    const auto model = build_imm_death(1000, 0.05, 0.01);
    const auto nu = point_mass(1001, 1000);
    const double t = static_cast<double>(state.range(0));
    SpsOptions o;
    o.renormalize = true;
    o.two_tailed = true;
    for (auto _ : state) {
        const auto r = sps_expmv(nu, model.Q, t, o);
        benchmark::DoNotOptimize(r.dist.data());
    }
}
BENCHMARK(bm_sps)->Arg(1)->Arg(5)->Arg(20)->Arg(40);

void bm_musps_vs_sequential(benchmark::State& state) {
    const auto model = build_imm_death(1000, 0.05, 0.01);
    const auto nu = point_mass(1001, 1000);
    const auto grid = TimeGrid::linspace(20.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto r = musps_expmv(nu, model.Q, grid, 1e-16);
        benchmark::DoNotOptimize(r.data());
    }
}
BENCHMARK(bm_musps_vs_sequential)->Arg(10)->Arg(100)->Arg(500);

void bm_quantile(benchmark::State& state) {
    const double rho = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(m_eps(rho, 1e-16));
    }
}
BENCHMARK(bm_quantile)->Arg(1)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
