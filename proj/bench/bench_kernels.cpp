// SPDX-License-Identifier: MIT
//
// Serial reference against the OpenMP path for the hot loops.
#include <benchmark/benchmark.h>

#include "lab/asymptotics.hpp"
#include "lab/kernels.hpp"
#include "lab/oracle2d.hpp"
#include "lab/sampling.hpp"
#include "lab/solver.hpp"

using namespace lab;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

const PotentialFn& sle_oracle() {
    static const PotentialFn u = [] {
        LaurentCoeffs c;
        c.a1 = {0.2, 0.1};
        c.a0 = {0.3, -0.2};
        c.am1 = 0.5;
        c.tail = {{0.1, 0.2}};
        return oracle_sle(c, kPi / 4);
    }();
    return u;
}

void BM_EvaluatePoints(benchmark::State& state) {
    const auto points = shell_points(2, 50.0, 200.0, 4096, 1);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_points(sle_oracle(), points, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(points.size()));
}

void BM_FitProfile(benchmark::State& state) {
    ShellSpec s;
    s.radii = {50, 100, 200};
    for (auto _ : state) benchmark::DoNotOptimize(fit_profile(sle_oracle(), EquationSpec::sle(2, kPi / 2), s, mode(state)));
}

void BM_DiscreteResidual(benchmark::State& state) {
    const AnnulusField f = AnnulusField::sample(AnnulusGrid(1.0, 8.0, 129, 256), ma_radial(1.0));
    for (auto _ : state) benchmark::DoNotOptimize(discrete_residual(EquationSpec::ma(2), f, mode(state)));
}

void BM_AssembleJacobian(benchmark::State& state) {
    const AnnulusField f = AnnulusField::sample(AnnulusGrid(1.0, 8.0, 129, 256), ma_radial(1.0));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_jacobian(EquationSpec::ma(2), f, mode(state)));
}

}  // namespace

// argument 0 = serial, 1 = OpenMP
BENCHMARK(BM_EvaluatePoints)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FitProfile)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiscreteResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleJacobian)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
