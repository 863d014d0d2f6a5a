#include <benchmark/benchmark.h>

#include <numbers>

#include "gdicke/finite_j.hpp"
#include "gdicke/quadratic_boson.hpp"
#include "gdicke/sweep.hpp"
#include "gdicke/tdlimit.hpp"

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void BM_DisplacementResidual(benchmark::State& state) {
    const gdicke::CanonicalParams p{1.0, 1.0, 1.1, 0.7};
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::displacement_residual(p, x));
    }
}
BENCHMARK(BM_DisplacementResidual);

void BM_SolveGeneric(benchmark::State& state) {
    const gdicke::CanonicalParams p{1.0, 1.0, 1.1, 0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::solve(p));
    }
}
BENCHMARK(BM_SolveGeneric);

void BM_SolveDicke(benchmark::State& state) {
    const gdicke::CanonicalParams p{1.0, 1.0, kHalfPi, 0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::solve(p));
    }
}
BENCHMARK(BM_SolveDicke);

void BM_ExcitationClosedForm(benchmark::State& state) {
    const gdicke::QuadraticForm q{1.0, 1.48, 0.2789, 0.411, -1.23};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::excitation_energies(q));
    }
}
BENCHMARK(BM_ExcitationClosedForm);

void BM_ExcitationNumeric(benchmark::State& state) {
    const gdicke::QuadraticForm q{1.0, 1.48, 0.2789, 0.411, -1.23};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::diagonalize_numeric(q));
    }
}
BENCHMARK(BM_ExcitationNumeric);

void BM_LambdaSweep(benchmark::State& state) {
    gdicke::SweepSpec spec;
    spec.axis = gdicke::SweepAxis::lambda;
    spec.lo = 0.0;
    spec.hi = 1.0;
    spec.count = static_cast<int>(state.range(0));
    spec.fixed = gdicke::CanonicalParams{1.0, 1.0, 1.1, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::run_sweep(spec));
    }
    state.SetItemsProcessed(state.iterations() * spec.count);
}
BENCHMARK(BM_LambdaSweep)->Arg(101)->Arg(401);

void BM_FiniteJDense(benchmark::State& state) {
    const double j = static_cast<double>(state.range(0));
    const gdicke::CanonicalParams p{1.0, 1.0, kHalfPi, 0.7};
    gdicke::FiniteJOptions opts;
    opts.method = gdicke::EigenMethod::dense;
    opts.convergence_check = false;
    const gdicke::BasisSpec basis{j, 40};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::solve_finite(p, basis, opts));
    }
    state.SetLabel("dim=" + std::to_string(gdicke::basis_dimension(basis)));
}
BENCHMARK(BM_FiniteJDense)->Arg(1)->Arg(2)->Arg(4);

void BM_FiniteJLanczos(benchmark::State& state) {
    const double j = static_cast<double>(state.range(0));
    const gdicke::CanonicalParams p{1.0, 1.0, kHalfPi, 0.7};
    gdicke::FiniteJOptions opts;
    opts.method = gdicke::EigenMethod::lanczos;
    opts.convergence_check = false;
    const gdicke::BasisSpec basis{j, 80};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdicke::solve_finite(p, basis, opts));
    }
    state.SetLabel("dim=" + std::to_string(gdicke::basis_dimension(basis)));
}
BENCHMARK(BM_FiniteJLanczos)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
