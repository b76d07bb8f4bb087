#include <benchmark/benchmark.h>

#include "resonant/versal.hpp"

using namespace resonant;

namespace {

SolverContext hopf_ctx(unsigned trunc) {
    FrequencyVector f = FrequencyVector::make({{Rational(1)}, {Rational(-1)}}, {Cplx(BigFloat(1))});
    ResonanceBasis basis = hilbert_basis(f, kDefaultDegBound);
    check_P1(f, basis, kDefaultDegBound);
    check_P2(f, basis, kDefaultDegBound);
    return SolverContext::make(std::move(f), std::move(basis), trunc, 1, NormalFormMode::versal);
}

Derivation hopf_field(const SolverContext& ctx) {
    Series t = Series::x(ctx.ring, 0) * Series::x(ctx.ring, 1) + Series::mu(ctx.ring, 0);
    Derivation X = ctx.linear_part();
    X.x(0) += t * Series::x(ctx.ring, 0);
    X.x(1) += t * Series::x(ctx.ring, 1);
    X.x(0) += Series::x(ctx.ring, 0) * Series::x(ctx.ring, 0);
    return X;
}

void BM_LieIteration(benchmark::State& state) {
    set_precision_bits(static_cast<unsigned>(state.range(1)));
    SolverContext ctx = hopf_ctx(static_cast<unsigned>(state.range(0)));
    Derivation X = hopf_field(ctx);
    for (auto _ : state) {
        NormalFormResult nf = lie_iteration(ctx, X);
        benchmark::DoNotOptimize(nf);
    }
}
BENCHMARK(BM_LieIteration)->Args({8, 256})->Args({12, 256})->Args({8, 512})->Unit(benchmark::kMillisecond);

void BM_VersalPipeline(benchmark::State& state) {
    set_precision_bits(256);
    SolverContext ctx = hopf_ctx(static_cast<unsigned>(state.range(0)));
    Derivation X = hopf_field(ctx);
    NormalFormResult nf = lie_iteration(ctx, X);
    for (auto _ : state) {
        VersalOutput out = versal_pipeline(ctx, nf);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_VersalPipeline)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
