#include <benchmark/benchmark.h>

#include <cmath>

#include "liplab/bounds.hpp"
#include "liplab/estimators.hpp"
#include "liplab/exact_lip.hpp"
#include "liplab/feasibility.hpp"
#include "liplab/init.hpp"
#include "liplab/rng.hpp"

using namespace liplab;

namespace {

NetworkParams bench_net(int d, int N, int L, std::uint64_t seed) {
    InitConfig cfg{d, N, L, {}, seed};
    cfg.bias.default_law = BiasLaw::gaussian(1.0);
    return sample_network(cfg);
}

void BM_forward(benchmark::State& state) {
    const NetworkParams net = bench_net(16, static_cast<int>(state.range(0)), 2, 1);
    Rng rng(2);
    Vector x(16);
    for (double& v : x) v = rng.gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(forward(net, x).value);
}
BENCHMARK(BM_forward)->Arg(64)->Arg(256)->Arg(1024);

void BM_gradient(benchmark::State& state) {
    const NetworkParams net = bench_net(16, static_cast<int>(state.range(0)), 2, 3);
    Rng rng(4);
    Vector x(16);
    for (double& v : x) v = rng.gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(gradient_at(net, x).gradient);
}
BENCHMARK(BM_gradient)->Arg(64)->Arg(256)->Arg(1024);

void BM_solve_margin(benchmark::State& state) {
    Rng rng(5);
    HalfspaceSystem sys;
    sys.dim = 4;
    for (int i = 0; i < state.range(0); ++i) {
        Halfspace h;
        h.a = {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        h.b = rng.gaussian();
        h.rel = i % 3 ? Relation::StrictGt : Relation::Le;
        sys.rows.push_back(std::move(h));
    }
    for (auto _ : state) benchmark::DoNotOptimize(solve_margin(sys).status);
}
BENCHMARK(BM_solve_margin)->Arg(8)->Arg(32)->Arg(96);

void BM_exact_lipschitz(benchmark::State& state) {
    const NetworkParams net =
        bench_net(2, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7);
    EnumerationBudget budget;
    budget.max_lp_solves = 10'000'000;
    budget.max_seconds = 600.0;
    for (auto _ : state) benchmark::DoNotOptimize(exact_lipschitz(net, budget).lip);
}
BENCHMARK(BM_exact_lipschitz)->Args({5, 1})->Args({10, 1})->Args({5, 2})->Args({16, 1});

void BM_sampled_lower(benchmark::State& state) {
    const NetworkParams net = bench_net(8, 64, 1, 9);
    EstimateConfig cfg{state.range(0), {}, 0, 11};
    for (auto _ : state) benchmark::DoNotOptimize(sampled_lip_lower(net, cfg));
}
BENCHMARK(BM_sampled_lower)->Arg(1024)->Arg(8192);

void BM_dudley_integral(benchmark::State& state) {
    auto log_cov = [](double eps) { return eps >= 1.0 ? 0.0 : 4.0 * std::log(9.0 / eps); };
    for (auto _ : state) benchmark::DoNotOptimize(dudley_entropy_integral(log_cov, 1.0));
}
BENCHMARK(BM_dudley_integral);

}  // namespace

BENCHMARK_MAIN();
