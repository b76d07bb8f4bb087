#pragma once

// Shared helpers for the test suites: reference (oracle) implementations of
// the differential-algebra operations, seeded random data, and canned
// frequency vectors. The oracles recompute everything with their own term
// loops so the production code paths are checked against independent
// arithmetic.

#include <random>
#include <vector>

#include "resonant/homological.hpp"
#include "resonant/normalform.hpp"

namespace resonant::testing {

// --- reference differential algebra ---------------------------------------

inline Series ref_derivative(const Series& f, unsigned slot) {
    const Ring& ring = f.ring();
    Series out(f.ring_ptr());
    for (const auto& [m, c] : f.terms()) {
        if (m.e[slot] == 0) continue;
        Mono dm = m;
        dm.e[slot] -= 1;
        dm.wt = static_cast<uint16_t>(m.wt - ring.slot_weight(slot));
        out.add_term(dm, c * BigFloat(static_cast<unsigned>(m.e[slot])));
    }
    return out;
}

inline Series ref_apply(const Derivation& D, const Series& f) {
    const Ring& ring = D.ring();
    Series out(D.ring_ptr());
    for (unsigned i = 0; i < ring.d(); ++i) {
        {
            Series df = ref_derivative(f, ring.x_slot(i));
            for (const auto& [mv, cv] : D.x(i).terms())
                out += df.mul_mono(mv, cv);
        }
        {
            Series df = ref_derivative(f, ring.phi_slot(i));
            for (const auto& [mv, cv] : D.phi(i).terms())
                out += df.mul_mono(mv, cv);
        }
    }
    return out;
}

inline Derivation ref_bracket(const Derivation& X, const Derivation& Y) {
    Derivation out(X.ring_ptr());
    for (unsigned i = 0; i < X.ring().d(); ++i) {
        out.x(i) = ref_apply(X, Y.x(i)) - ref_apply(Y, X.x(i));
        out.phi(i) = ref_apply(X, Y.phi(i)) - ref_apply(Y, X.phi(i));
    }
    return out;
}

// --- random data -----------------------------------------------------------

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    double real(double lo = -1.0, double hi = 1.0) {
        std::uniform_real_distribution<double> dist(lo, hi);
        return dist(gen);
    }
    unsigned index(unsigned n) {
        std::uniform_int_distribution<unsigned> dist(0, n - 1);
        return dist(gen);
    }
    Cplx coeff(bool complex_part = true) {
        return Cplx(BigFloat(real()), complex_part ? BigFloat(real()) : BigFloat(0));
    }
};

/// Random x-monomial of the given total degree.
inline Mono random_x_mono(Rng& rng, const Ring& ring, unsigned degree) {
    std::vector<unsigned> k(ring.d(), 0);
    for (unsigned t = 0; t < degree; ++t) k[rng.index(ring.d())] += 1;
    return make_mono(ring, k);
}

/// Random polynomial derivation with d/dx terms of the given coefficient
/// weights (x-monomials only).
inline Derivation random_x_field(Rng& rng, const RingPtr& ring, unsigned terms, unsigned min_wt,
                                 unsigned max_wt, bool complex_coeffs = true) {
    Derivation D(ring);
    for (unsigned t = 0; t < terms; ++t) {
        unsigned wt = min_wt + rng.index(max_wt - min_wt + 1);
        D.x(rng.index(ring->d())).add_term(random_x_mono(rng, *ring, wt), rng.coeff(complex_coeffs));
    }
    return D;
}

// --- canned frequency vectors ----------------------------------------------

inline FrequencyVector freq_hopf() {
    // Lambda = (1, -1) over omega = (1)
    return FrequencyVector::make({{Rational(1)}, {Rational(-1)}}, {Cplx(BigFloat(1))});
}

inline FrequencyVector freq_two_pairs() {
    // Lambda = (a, b, -a, -b), a = 1, b = sqrt(2), block ordering (x1 x2 y1 y2)
    Cplx w1(BigFloat(1));
    Cplx w2(sqrt(BigFloat(2)));
    return FrequencyVector::make(
        {{Rational(1), Rational(0)},
         {Rational(0), Rational(1)},
         {Rational(-1), Rational(0)},
         {Rational(0), Rational(-1)}},
        {w1, w2});
}

inline FrequencyVector freq_112() {
    // Lambda = (1, 1, -2)
    return FrequencyVector::make({{Rational(1)}, {Rational(1)}, {Rational(-2)}}, {Cplx(BigFloat(1))});
}

inline FrequencyVector freq_sum_pair() {
    // Lambda = (a+b, a, b), a = 1, b = sqrt(2)
    Cplx w1(BigFloat(1));
    Cplx w2(sqrt(BigFloat(2)));
    return FrequencyVector::make(
        {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, {w1, w2});
}

inline SolverContext make_context(FrequencyVector freq, unsigned trunc, unsigned mu_count, NormalFormMode mode,
                                  IterationVariant variant = IterationVariant::updated,
                                  unsigned deg_bound = kDefaultDegBound) {
    ResonanceBasis basis = hilbert_basis(freq, deg_bound);
    check_P1(freq, basis, deg_bound);
    check_P2(freq, basis, deg_bound);
    return SolverContext::make(std::move(freq), std::move(basis), trunc, mu_count, mode, variant);
}

inline double to_double(const BigFloat& v) { return static_cast<double>(v); }

}  // namespace resonant::testing
