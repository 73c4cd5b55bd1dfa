#include "mbl/operators.hpp"
#include "mbl/scheme2.hpp"
#include "mbl/scheme3.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace mbl;

namespace {

std::vector<double> front(int n, double uB)
{
    std::vector<double> u(n + 1);
    for (int j = 0; j <= n; ++j)
        u[j] = uB * 0.5 * (1.0 - std::tanh((double(j) / n - 0.3) / 0.02));
    return u;
}

void BM_HelmholtzSolve(benchmark::State& st)
{
    const int n = int(st.range(0));
    const int order = int(st.range(1));
    const double dx = 1.0 / n;
    const HelmholtzSolver solver(n + 1, 0.005 * 0.005 * 5.0, dx, order);
    const auto w = front(n, 0.8);
    std::vector<double> v(w.size());
    for (auto _ : st) {
        v = w;
        solver.solve(v, 0.8, 0.0);
        benchmark::DoNotOptimize(v.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_HelmholtzSolve)->ArgsProduct({{1500, 12500}, {2, 4}});

void BM_Scheme2StepPair(benchmark::State& st)
{
    const int n = int(st.range(0));
    const auto grid = GridSpec::make(0.75, n, 0.1);
    const MBLParams p{0.005, 5.0};
    const FluxModel model(2.0);
    const auto v = st.range(1) ? Variant::midpoint : Variant::trapezoid;
    auto s = make_scheme2_state(grid, p, model, v, Boundary::constant(0.8, 0.0), front(n, 0.8));
    Scheme2Stepper stepper(grid, p, model, v);
    const double dt = grid.lambda * grid.dx;
    for (auto _ : st) {
        stepper.step(s, dt);
        stepper.step(s, dt);
    }
    st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_Scheme2StepPair)->ArgsProduct({{1500, 12500}, {0, 1}});

void BM_Scheme3Rhs(benchmark::State& st)
{
    const int n = int(st.range(0));
    const Scheme3Context ctx{GridSpec::make(0.75, n, 0.1), MBLParams{0.005, 5.0}, FluxModel(2.0),
                             Boundary::constant(0.8, 0.0)};
    const auto s = make_scheme3_state(ctx, front(n, 0.8));
    Scheme3Integrator integ(ctx);
    std::vector<double> out(n + 1);
    for (auto _ : st) {
        integ.rhs(0.0, s.wbar.values, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_Scheme3Rhs)->Arg(1500)->Arg(12500);

void BM_Cweno(benchmark::State& st)
{
    const int n = int(st.range(0));
    const auto w = front(n, 0.8);
    for (auto _ : st)
        benchmark::DoNotOptimize(cweno_reconstruct(w, 1.0 / n));
    st.SetItemsProcessed(st.iterations() * n);
}
BENCHMARK(BM_Cweno)->Arg(1500)->Arg(12500);

} // namespace

BENCHMARK_MAIN();
