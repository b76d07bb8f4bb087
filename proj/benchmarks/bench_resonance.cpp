#include <benchmark/benchmark.h>

#include "resonant/resonance.hpp"
#include "resonant/smalldivisor.hpp"

using namespace resonant;

namespace {

FrequencyVector freq_112() {
    return FrequencyVector::make({{Rational(1)}, {Rational(1)}, {Rational(-2)}}, {Cplx(BigFloat(1))});
}

void BM_HilbertBasis(benchmark::State& state) {
    set_precision_bits(256);
    FrequencyVector f = freq_112();
    for (auto _ : state) {
        ResonanceBasis basis = hilbert_basis(f, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(basis);
    }
}
BENCHMARK(BM_HilbertBasis)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PositivityChecks(benchmark::State& state) {
    set_precision_bits(256);
    FrequencyVector f = freq_112();
    ResonanceBasis basis = hilbert_basis(f, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        ResonanceBasis copy = basis;
        check_P1(f, copy, static_cast<unsigned>(state.range(0)));
        check_P2(f, copy, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(copy);
    }
}
BENCHMARK(BM_PositivityChecks)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SigmaSequence(benchmark::State& state) {
    set_precision_bits(256);
    FrequencyVector f = FrequencyVector::from_numeric({{1.0, 0.0}, {1.6180339887498949, 0.0}});
    for (auto _ : state) {
        BrunoReport rep = sigma_sequence(f, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_SigmaSequence)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
