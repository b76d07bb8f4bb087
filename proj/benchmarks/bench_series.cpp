#include <benchmark/benchmark.h>

#include <random>

#include "resonant/series.hpp"

using namespace resonant;

namespace {

Series dense_series(const RingPtr& ring, unsigned terms, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<unsigned> slot(0, ring->slots() - 1);
    Series s = Series::constant(ring, Cplx::one());
    for (unsigned t = 0; t < terms; ++t) {
        Mono m;
        unsigned budget = 1 + (gen() % (ring->trunc() - 1));
        unsigned wt = 0;
        while (wt < budget) {
            unsigned v = slot(gen);
            unsigned w = ring->slot_weight(v);
            if (wt + w > budget || m.e[v] == 255) break;
            m.e[v] += 1;
            wt += w;
        }
        m.wt = static_cast<uint16_t>(wt);
        s.add_term(m, Cplx(BigFloat(coeff(gen))));
    }
    return s;
}

void BM_SeriesMul(benchmark::State& state) {
    set_precision_bits(256);
    auto ring = Ring::make(static_cast<unsigned>(state.range(0)), 1, 1,
                           static_cast<unsigned>(state.range(1)), {2});
    Series a = dense_series(ring, 120, 1);
    Series b = dense_series(ring, 120, 2);
    for (auto _ : state) {
        Series c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SeriesMul)->Args({2, 8})->Args({4, 8})->Args({4, 12})->Unit(benchmark::kMicrosecond);

void BM_UnitInverse(benchmark::State& state) {
    set_precision_bits(256);
    auto ring = Ring::make(2, 0, 0, static_cast<unsigned>(state.range(0)));
    Series g = Series::constant(ring, Cplx(BigFloat(-1)));
    g -= Series::phi(ring, 0);
    g += Series::x(ring, 0) * Series::x(ring, 1);
    for (auto _ : state) {
        Series inv = invert_unit(g);
        benchmark::DoNotOptimize(inv);
    }
}
BENCHMARK(BM_UnitInverse)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace
