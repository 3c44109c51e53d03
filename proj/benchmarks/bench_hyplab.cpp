#include <benchmark/benchmark.h>

#include "hyplab/bounds_lab.hpp"
#include "hyplab/degeneration.hpp"
#include "hyplab/hyperbolic_gamma.hpp"
#include "hyplab/integrals.hpp"

using namespace hyplab;

namespace {

const PeriodPair kOmega(cplx(1, 1), cplx(1, -1));

ComplexRegime regime(double delta) {
    ComplexRegime r;
    r.m = 1;
    r.k = 2;
    r.u = cplx(0, -0.4);
    r.v = 0.3;
    r.M = 3;
    return r.with_delta(delta);
}

void BM_HypGammaProduct(benchmark::State& state) {
    cplx z(0.8, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(hyp_gamma(z, kOmega).value);
}
BENCHMARK(BM_HypGammaProduct);

void BM_HypGammaIntegral(benchmark::State& state) {
    cplx z(0.8, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(hyp_gamma_integral(z, kOmega, 1e-10).value);
}
BENCHMARK(BM_HypGammaIntegral);

void BM_BetaIntegrand(benchmark::State& state) {
    ComplexRegime r = regime(1.0 / 16);
    cplx z(0.1, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(beta_integrand(z, r));
}
BENCHMARK(BM_BetaIntegrand);

void BM_BetaCylinderSum(benchmark::State& state) {
    ComplexRegime r = regime(1.0 / state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(beta_sum(r, 1e-7).total.value);
}
BENCHMARK(BM_BetaCylinderSum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ComplexBeta(benchmark::State& state) {
    DoubleExponent a(1.0 / 3, 1.0 / 3);
    for (auto _ : state) benchmark::DoNotOptimize(complex_beta(a, a, 1e-7, PlaneMode::cylinder).residual);
}
BENCHMARK(BM_ComplexBeta)->Unit(benchmark::kMillisecond);

void BM_QprodResidual(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(qprod_ratio_residual(16, 1.0 / 16, 0.2, 1, cplx(0, -0.2), epsilon_standard));
}
BENCHMARK(BM_QprodResidual);

}  // namespace

BENCHMARK_MAIN();
